"""Regenerate the default German lexica shipped in ``src/styloprint/data``.

The POS lexicon is built from hand-curated word lists with rule-based
inflection. The frequency table is derived from the ``wordfreq`` German
word list (CC-BY-SA 4.0), which is only needed when running this script:

    pip install wordfreq
    python tools/build_lexica.py

The stop word list (``stopwords_de.txt``) is maintained by hand.
"""
import argparse
import re
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "styloprint" / "data"

PRONOUNS = """
ich du er sie es wir ihr mich dich sich uns euch mir dir ihm ihn ihnen man
mein meine meinen meinem meiner meines dein deine deinen deinem deiner deines
seine seinen seinem seiner seines ihre ihren ihrem ihrer ihres
unser unsere unseren unserem unserer unseres euer eure euren eurem eurer eures
dieser diese dieses diesen diesem jener jene jenes jenen jenem
jemand jemanden jemandem niemand niemanden niemandem etwas nichts
jeder jede jedes jeden jedem alle allen aller alles
wer wen wem wessen was welcher welche welches welchen welchem
selbst selber einander
"""

CONJ_SUB = """
weil dass daß ob obwohl obgleich obschon wenn falls sofern nachdem bevor ehe
seitdem sobald solange sodass damit indem wohingegen wenngleich sooft
"""

CONJ_COORD = """
und oder aber denn sondern doch jedoch sowie beziehungsweise sowohl weder
"""

OTHER = """
der die das den dem des ein eine einen einem einer eines kein keine keinen
keinem keiner keines
an am auf aus bei beim bis durch für gegen hinter im in ins mit nach neben
ohne seit über um unter von vom vor wegen zu zum zur zwischen trotz statt
während als wie
nicht auch noch schon nur so da dann dort hier jetzt nun immer nie sehr ja
nein gar ganz wieder mal einmal eben sogar wohl zwar also hin her heute
morgen gestern dabei darauf darum dazu davon wo wann warum mehr weniger
oft bald gern gerne fast kaum vielleicht sicher sofort plötzlich endlich
zuerst danach dennoch deshalb trotzdem außerdem überall nirgends irgendwo
eins zwei drei vier fünf sechs sieben acht neun zehn elf zwölf zwanzig
hundert tausend erst erste ersten erster zweite zweiten dritte dritten
"""

# Irregular and modal verbs: all listed forms are tagged verb.
IRREGULAR_VERBS = """
sein bin bist ist sind seid war warst waren wart gewesen
haben habe hast hat habt hatte hattest hatten hattet gehabt
werden werde wirst wird werdet wurde wurdest wurden wurdet geworden worden
können kann kannst könnt konnte konntest konnten gekonnt
müssen muss musst müsst musste musstest mussten gemusst
wollen will willst wollt wollte wolltest wollten gewollt
sollen soll sollst sollt sollte solltest sollten gesollt
dürfen darf darfst dürft durfte durften gedurft
mögen mag magst mögt mochte mochten möchte möchten
gehen gehe gehst geht ging gingst gingen gegangen
kommen komme kommst kommt kam kamst kamen gekommen
sehen sehe siehst sieht seht sah sahst sahen gesehen
geben gebe gibst gibt gebt gab gabst gaben gegeben
nehmen nehme nimmst nimmt nehmt nahm nahmen genommen
sprechen spreche sprichst spricht sprecht sprach sprachen gesprochen
finden finde findest findet fand fanden gefunden
stehen stehe stehst steht stand standen gestanden
liegen liege liegst liegt lag lagen gelegen
sitzen sitze sitzt saß saßen gesessen
laufen laufe läufst läuft lauft lief liefen gelaufen
rufen rufe rufst ruft rief riefen gerufen
schlafen schlafe schläfst schläft schlaft schlief schliefen geschlafen
essen esse isst esst aß aßen gegessen
trinken trinke trinkst trinkt trank tranken getrunken
fahren fahre fährst fährt fahrt fuhr fuhren gefahren
fliegen fliege fliegst fliegt flog flogen geflogen
fallen falle fällst fällt fallt fiel fielen gefallen
halten halte hältst hält haltet hielt hielten gehalten
lassen lasse lässt lasst ließ ließen gelassen
tun tue tust tut tat taten getan
wissen weiß weißt wisst wusste wussten gewusst
denken denke denkst denkt dachte dachten gedacht
bringen bringe bringst bringt brachte brachten gebracht
bleiben bleibe bleibst bleibt blieb blieben geblieben
schreiben schreibe schreibst schreibt schrieb schrieben geschrieben
lesen lese liest lest las lasen gelesen
helfen helfe hilfst hilft helft half halfen geholfen
treffen treffe triffst trifft trefft traf trafen getroffen
tragen trage trägst trägt tragt trug trugen getragen
ziehen ziehe ziehst zieht zog zogen gezogen
schließen schließe schließt schloss schlossen geschlossen
singen singe singst singt sang sangen gesungen
springen springe springst springt sprang sprangen gesprungen
schwimmen schwimme schwimmst schwimmt schwamm schwammen geschwommen
heißen heiße heißt hieß hießen geheißen
beginnen beginne beginnst beginnt begann begannen begonnen
vergessen vergesse vergisst vergesst vergaß vergaßen
verstehen verstehe verstehst versteht verstand verstanden
werfen werfe wirfst wirft werft warf warfen geworfen
sterben sterbe stirbst stirbt sterbt starb starben gestorben
wachsen wachse wächst wachst wuchs wuchsen gewachsen
scheinen scheine scheinst scheint schien schienen geschienen
gewinnen gewinne gewinnst gewinnt gewann gewannen gewonnen
verlieren verliere verlierst verliert verlor verloren
"""

# Weak verb stems, conjugated regularly below.
REGULAR_STEMS = """
mach sag spiel leb lieb frag hol such kauf hör lern wohn zeig brauch glaub
fühl hoff lach wein tanz koch kling klopf kehr lenk lob nick pack pflanz
pflück putz reich reis rett sag schau schenk schick schmeck schütz setz
spar sperr stell stör stürz teil träum üb wähl wander wart weck wünsch
zahl zähl zeichn leg führ kämpf küss lausch jag grüß flüster hüpf horch
ruh pfeif bau blick dank dien dreh drück erzähl erklär erleb gehör
besuch bestell bezahl verkauf versuch entdeck erreich gehorch verzauber
arbeit antwort bet beobacht bild fürcht heirat hust kost lächel leucht
meld öffn red rechn rett schalt schwitz bitt blut wart
"""

ADJECTIVES = """
klein groß alt jung gut schlecht schön hässlich lang kurz tief weit nah
schnell langsam stark schwach reich arm warm kalt heiß kühl hell laut
neu früh spät leicht schwer hart weich süß sauer bitter rot blau grün gelb
weiß schwarz grau braun golden silbern klug dumm froh traurig glücklich
lustig fröhlich lieb nett freundlich wild zahm wach krank gesund frisch
trocken nass voll leer halb rund dick dünn breit schmal still ruhig sanft
fein grob eng klar tapfer mutig feige ehrlich treu falsch richtig wahr echt
fremd bekannt berühmt wichtig einfach schwierig möglich nötig wunderbar
herrlich prächtig zart stolz fleißig faul dicht arg bunt edel eitel
fett flach frei ganz gemein gerecht glatt gleich grimmig hungrig durstig
kahl knapp krumm lahm mager matt mild munter nackt neugierig offen
prall rasch reif roh satt scharf schlank schlau schmutzig sauber seltsam
selten sicher spitz steil stumm teuer tot übel weise wert wütend zornig
zufrieden gewaltig riesig winzig ewig heilig köstlich lieblich gefährlich
ängstlich herzlich kräftig listig mächtig prunkvoll zauberhaft
dunkel leise müde böse
"""

NOUNS = """
könig königin prinz prinzessin wald haus mann frau kind kinder tag nacht
zeit welt mutter vater bruder schwester sohn tochter hund katze vogel
pferd baum blume stadt dorf schloss garten wasser feuer erde himmel sonne
mond stern sterne wind regen schnee berg berge see meer fluss weg straße
tür fenster tisch stuhl bett brot milch apfel äpfel hexe zwerg zwerge
riese drache fee zauberer ritter bauer müller jäger soldat hand hände
kopf auge augen herz fuß füße mund ohr nase haar gesicht stimme leute
menschen mensch freund freunde freundin name jahr jahre monat woche stunde
minute morgen abend mittag schule lehrer buch bücher brief wort wörter
frage antwort geschichte märchen ende anfang teil seite land länder
volk arbeit geld sache ding dinge bild platz raum licht glück angst
freude liebe krieg frieden gold silber ring krone schatz kiste korb
wolf fuchs bär hase maus mäuse frosch fisch fische schwan gans ente
kuh schwein ziege schaf esel hahn huhn eule rabe taube biene
system daten methode ergebnis ergebnisse analyse theorie modell prozess
problem lösung untersuchung studie funktion wert werte text texte autor
autoren sprache stil merkmal merkmale verfahren beispiel anwendung
"""

SUFFIX_RULES = [
    ("ungen", "noun"), ("ung", "noun"),
    ("heiten", "noun"), ("heit", "noun"),
    ("keiten", "noun"), ("keit", "noun"),
    ("schaften", "noun"), ("schaft", "noun"),
    ("tionen", "noun"), ("tion", "noun"),
    ("täten", "noun"), ("tät", "noun"),
    ("nisse", "noun"), ("nis", "noun"),
    ("ismus", "noun"), ("chen", "noun"), ("lein", "noun"),
    ("ierten", "verb"), ("ierte", "verb"), ("ieren", "verb"),
    ("ierst", "verb"), ("iert", "verb"), ("iere", "verb"),
    ("lichen", "adjective"), ("licher", "adjective"), ("liches", "adjective"),
    ("lichem", "adjective"), ("liche", "adjective"), ("lich", "adjective"),
    ("ischen", "adjective"), ("ischer", "adjective"), ("isches", "adjective"),
    ("ischem", "adjective"), ("ische", "adjective"), ("isch", "adjective"),
    ("igen", "adjective"), ("iger", "adjective"), ("iges", "adjective"),
    ("igem", "adjective"), ("ige", "adjective"), ("ig", "adjective"),
    ("baren", "adjective"), ("bare", "adjective"), ("bar", "adjective"),
    ("samen", "adjective"), ("same", "adjective"), ("sam", "adjective"),
    ("haften", "adjective"), ("hafte", "adjective"), ("haft", "adjective"),
    ("losen", "adjective"), ("lose", "adjective"), ("los", "adjective"),
]


def words(block):
    return block.split()


def conjugate(stem):
    e = "e" if stem.endswith(("t", "d", "n")) and not stem.endswith(("rn", "ln")) else ""
    forms = [stem + "en", stem + "e", stem + e + "st", stem + e + "t",
             stem + e + "te", stem + e + "test", stem + e + "ten", stem + e + "tet"]
    if stem.endswith(("er", "el")):
        forms[0] = stem + "n"
    prefixed = stem.startswith(("be", "er", "ver", "ent", "ge", "zer"))
    if not prefixed:
        forms.append("ge" + stem + e + "t")
    return forms


def inflect_adjective(base):
    if base.endswith("e"):
        return [base, base + "n", base + "r", base + "s", base + "m"]
    if base.endswith("el") or base.endswith(("auer", "euer")):
        stem = base[:-2] + base[-1]
    else:
        stem = base
    return [base] + [stem + end for end in ("e", "en", "er", "es", "em")]


def pos_entries():
    entries = {}

    def add(tokens, cls):
        for t in tokens:
            entries.setdefault(t, cls)

    add(words(PRONOUNS), "pronoun")
    add(words(CONJ_SUB), "conjunction_sub")
    add(words(CONJ_COORD), "conjunction_coord")
    add(words(OTHER), "other")
    add(words(IRREGULAR_VERBS), "verb")
    for base in words(ADJECTIVES):
        add(inflect_adjective(base), "adjective")
    add(words(NOUNS), "noun")
    for stem in dict.fromkeys(words(REGULAR_STEMS)):
        add(conjugate(stem), "verb")
    return entries


FREQ_HEADER = (
    "# Reference frequencies per 1e8 tokens, derived from the wordfreq German list.\n"
    "# wordfreq data is CC-BY-SA 4.0 (https://github.com/rspeer/wordfreq).\n"
)


def build_frequency_table(n=10000):
    from wordfreq import top_n_list, word_frequency

    rows = []
    for w in top_n_list("de", n * 2):
        if not re.fullmatch(r"[^\W\d_]+(?:['\-][^\W\d_]+)*", w):
            continue
        rows.append((w, max(1, round(word_frequency(w, "de") * 1e8))))
        if len(rows) == n:
            break
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--skip-freq", action="store_true", help="keep the existing frequency table")
    args = ap.parse_args()

    entries = pos_entries()
    with open(DATA / "pos_de.tsv", "w", encoding="utf-8") as fh:
        for tok in sorted(entries):
            fh.write(f"{tok}\t{entries[tok]}\n")
    with open(DATA / "suffix_de.tsv", "w", encoding="utf-8") as fh:
        for suffix, cls in SUFFIX_RULES:
            fh.write(f"{suffix}\t{cls}\n")
    print(f"pos entries: {len(entries)}, suffix rules: {len(SUFFIX_RULES)}")

    if not args.skip_freq:
        rows = build_frequency_table()
        with open(DATA / "freq_de.tsv", "w", encoding="utf-8") as fh:
            fh.write(FREQ_HEADER)
            for tok, count in rows:
                fh.write(f"{tok}\t{count}\n")
        print(f"frequency entries: {len(rows)}")


if __name__ == "__main__":
    main()
