import numpy as np
from sklearn.utils.validation import check_array


def as_matrix(X, min_samples=1):
    """2-D finite float matrix (documents x attributes)."""
    return check_array(X, dtype=float, ensure_min_samples=min_samples, ensure_all_finite=True)


def attribute_names(names, n):
    if names is None:
        return tuple(f"x{i}" for i in range(n))
    names = tuple(str(a) for a in names)
    if len(names) != n:
        raise ValueError(f"{len(names)} attribute names for {n} columns")
    if len(set(names)) != n:
        raise ValueError("attribute names must be unique")
    return names


def as_labels(y, n):
    y = [str(v) for v in np.asarray(y, dtype=object).ravel()]
    if len(y) != n:
        raise ValueError(f"{len(y)} labels for {n} rows")
    return y
