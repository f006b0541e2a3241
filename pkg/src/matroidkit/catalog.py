"""Named matroids used in demos and tests.

Labels are the strings "1".."n". Names accepted by get():
fano, fano_dual, non_fano, mk4, empty, uniform-R-N.
"""

from __future__ import annotations

import re
from itertools import combinations

from .core import dual, empty as _empty, from_bases, uniform

FANO_LINES = [
    ("1", "2", "3"), ("1", "4", "5"), ("1", "6", "7"), ("2", "4", "6"),
    ("2", "5", "7"), ("3", "4", "7"), ("3", "5", "6"),
]

# edges of K4 on vertices a..d: 1=ab 2=ac 3=ad 4=bc 5=bd 6=cd
MK4_TRIANGLES = [("1", "2", "4"), ("1", "3", "5"), ("2", "3", "6"), ("4", "5", "6")]


def rank3_from_lines(n, lines, name):
    """Simple rank-3 matroid whose nontrivial lines are given."""
    labels = [str(i) for i in range(1, n + 1)]
    dead = {frozenset(l) for l in lines}
    bases = [c for c in combinations(labels, 3) if frozenset(c) not in dead]
    return from_bases(labels, bases, name=name)


def fano():
    return rank3_from_lines(7, FANO_LINES, "F7")


def non_fano():
    # drop the line {3,5,6}
    return rank3_from_lines(7, FANO_LINES[:-1], "F7-")


def fano_dual():
    M = dual(fano())
    M.name = "F7*"
    return M


def mk4():
    return rank3_from_lines(6, MK4_TRIANGLES, "M(K4)")


def empty():
    return _empty()


_UNIFORM = re.compile(r"^(?:uniform-|U)(\d+)[-,_](\d+)$")

NAMES = ("fano", "fano_dual", "non_fano", "mk4", "empty")


def get(name):
    m = _UNIFORM.match(name)
    if m:
        return uniform(int(m.group(1)), int(m.group(2)))
    makers = {"fano": fano, "fano_dual": fano_dual, "non_fano": non_fano, "mk4": mk4, "empty": empty}
    if name not in makers:
        raise KeyError(f"unknown catalog matroid {name!r}")
    return makers[name]()


def is_catalog_name(name):
    return name in NAMES or bool(_UNIFORM.match(name))


def small_catalog(max_n=10):
    """Every catalog matroid on at most max_n elements (uniforms up to max_n)."""
    out = [empty(), fano(), fano_dual(), non_fano(), mk4()]
    out = [M for M in out if M.n <= max_n]
    for n in range(1, max_n + 1):
        for r in range(n + 1):
            out.append(uniform(r, n))
    return out
