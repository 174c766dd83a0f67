"""Shipped desk-scale corpus: the worked 5x5 two-block algebra, small path
quivers over degree patterns {1,2,3}, and the example polynomial."""

from __future__ import annotations

import itertools

from .freealg import parse
from .quiver import Edge, FullQuiver, Vertex, realize
from .scalars import FieldSpec

ROMAN = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII"]


def ex5_quiver(p=2):
    """Two blocks of degrees 3 and 2 with the full radical strip between them."""
    spec = FieldSpec.gf(p)
    return FullQuiver(
        spec,
        [Vertex(1, "I", 3, 1), Vertex(2, "II", 2, 1)],
        edges=[Edge(1, 2)],
    )


def ex5_algebra(p=2):
    return realize(ex5_quiver(p))


def ex5_poly(spec):
    return parse("x1*[x2,x3]*x4 + x4*[x2,x3]*x1^2", spec)


def path_quiver(degrees, p=2, fieldexps=None):
    """A simple path quiver v1 -> v2 -> ... with the given block degrees."""
    spec = FieldSpec.gf(p)
    fieldexps = fieldexps or [1] * len(degrees)
    vertices = [Vertex(i + 1, ROMAN[i], d, t)
                for i, (d, t) in enumerate(zip(degrees, fieldexps))]
    edges = [Edge(i + 1, i + 2) for i in range(len(degrees) - 1)]
    return FullQuiver(spec, vertices, edges=edges)


def small_corpus(max_vertices=3, p=2):
    """Every path quiver on <= max_vertices vertices with degrees from {1,2,3}."""
    quivers = []
    for k in range(1, max_vertices + 1):
        for degrees in itertools.product((1, 2, 3), repeat=k):
            quivers.append(path_quiver(list(degrees), p))
    return quivers


def diamond_quiver(p=2):
    """v1(2) -> v2(1) -> v3(2) plus the shortcut edge v1 -> v3."""
    spec = FieldSpec.gf(p)
    return FullQuiver(
        spec,
        [Vertex(1, "I", 2, 1), Vertex(2, "II", 1, 1), Vertex(3, "III", 2, 1)],
        edges=[Edge(1, 2), Edge(2, 3), Edge(1, 3)],
    )


def chain_word_poly(spec, k):
    """The multilinear chain x1*x2*...*xk, a full nonidentity on path quivers."""
    return parse("*".join(f"x{i}" for i in range(1, k + 1)), spec)
