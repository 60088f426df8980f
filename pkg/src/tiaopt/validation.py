"""Small input-validation helpers shared across the package."""

import numbers

import numpy as np


def check_rng(rng):
    """Accept a numpy Generator; reject legacy RandomState and bare seeds so
    every caller is explicit about stream ownership."""
    if not isinstance(rng, np.random.Generator):
        raise TypeError(
            f"expected numpy.random.Generator, got {type(rng).__name__}; "
            "create one with numpy.random.default_rng(seed)")
    return rng


def check_scalar(value, name, *, minimum=None, maximum=None,
                 include_min=True, include_max=True, integral=False):
    """Range-check one numeric parameter and return it as float or int."""
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise TypeError(f"{name} must be a real number, got {value!r}")
    if integral:
        if float(value) != int(value):
            raise ValueError(f"{name} must be an integer, got {value!r}")
        value = int(value)
    else:
        value = float(value)
    if not np.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    if minimum is not None:
        if include_min and value < minimum:
            raise ValueError(f"{name} must be >= {minimum}, got {value}")
        if not include_min and value <= minimum:
            raise ValueError(f"{name} must be > {minimum}, got {value}")
    if maximum is not None:
        if include_max and value > maximum:
            raise ValueError(f"{name} must be <= {maximum}, got {value}")
        if not include_max and value >= maximum:
            raise ValueError(f"{name} must be < {maximum}, got {value}")
    return value


def check_seed(seed, name="seed"):
    """64-bit non-negative integer seed."""
    seed = check_scalar(seed, name, minimum=0, integral=True)
    if seed >= 2**64:
        raise ValueError(f"{name} does not fit in 64 bits: {seed}")
    return seed
