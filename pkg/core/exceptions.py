class CrossCheckError(Exception):
    """Raised when two independent computations of the same invariant disagree.

    Input problems are reported with ``django.core.exceptions.ValidationError``;
    this error means the mathematics did not check out.
    """
