##
## A second, independent implementation of the brute-force checks,
## vectorized with numpy.  The tests run both and compare.
##
## A space of tables becomes an integer matrix: one row per table,
## one column per domain element, 0 for BOTTOM and k for the k'th
## codomain value (1-based).  Then
##
##     f ⊑ g   iff   every column of f is 0 or equal to g's
##
## and the whole order is one broadcast comparison.  A functional
## becomes the array of image row numbers.
##
## This needs numpy, which tarskifix itself doesn't depend on:
##
##     pip install tarskifix[reference]
##
## --------------------------------------------------------

import numpy as np

from .errors import NoFixpoint, NoLeast
from .flatdomain import BOTTOM

__all__ = [
    "encode", # function
    "image_indices", # function
    "least_fixpoint_reference", # function
    "monotone_counterexample", # function
    "order_matrix", # function
    ]


def encode(space):
    "The (len(space), len(domain)) matrix of a space, in enumeration order."
    codes = {b: k for k, b in enumerate(space.codomain, 1)}
    rows = [[0 if e is BOTTOM else codes[e.value] for e in t.entries] for t in space.elements]
    return np.array(rows, dtype=np.int64).reshape(len(space.elements), len(space.domain))


def order_matrix(space):
    "order_matrix(space)[i, j] is True iff elements[i] ⊑ elements[j]."
    m = encode(space)
    left = m[:, None, :]
    right = m[None, :, :]
    return ((left == 0) | (left == right)).all(axis=2)


def image_indices(functional, space):
    return np.array([space.index[image] for image in space.images(functional)], dtype=np.int64)


def monotone_counterexample(functional, space):
    """
    Returns None if functional is monotone on space, otherwise the
    first pair (f, g) in lexicographic order with f ⊑ g but
    F(f) ⋢ F(g).  Agrees with cpo_checker.check_monotone.
    """
    leq = order_matrix(space)
    images = image_indices(functional, space)
    violations = leq & ~leq[np.ix_(images, images)]
    found = np.argwhere(violations)
    if not len(found):
        return None
    i, j = found[0]
    return space.elements[int(i)], space.elements[int(j)]


def least_fixpoint_reference(functional, space):
    leq = order_matrix(space)
    images = image_indices(functional, space)
    fixed = np.nonzero(images == np.arange(len(images)))[0]
    if not len(fixed):
        raise NoFixpoint(f"no fixpoint among the {len(space)} tables of the space")
    below_all = leq[np.ix_(fixed, fixed)].all(axis=1)
    least = fixed[below_all]
    if not len(least):
        raise NoLeast(f"none of the {len(fixed)} fixpoints is below all the others",
            [space.elements[int(i)] for i in fixed])
    return space.elements[int(least[0])]
