"""Iterated exponentials, the complexity bounds, and Church-numeral families."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DomainError, LhrError
from .reduction import DEFAULT_STEP_BUDGET, beta_normalize, lhr_run, numeral_value
from .skeleton import measures as skeleton_measures
from .transforms import scope_report
from .lambda_core import (
    Abs,
    App,
    Arrow,
    O,
    Var,
    apps,
    depth,
    fresh_supply,
    height,
    local_height,
    order,
    rename_bound,
)


class Overflow(LhrError):
    pass


@dataclass(frozen=True)
class TowerExpr:
    """``2_height^top``, with ``2_0^x = x`` and ``2_{k+1}^x = 2^(2_k^x)``.

    Height ``-1`` stands for ``log2(top)``, the one step below ``2_0``; it is
    used for bounds whose exponent is a real logarithm.
    """

    height: int
    top: int

    def __post_init__(self):
        if self.height < -1 or self.top < 0 or (self.height == -1 and self.top < 1):
            raise DomainError(f"bad tower {self.height}, {self.top}")

    def value(self, limit_bits=1 << 20):
        if self.height == -1:
            raise Overflow("logarithmic tower has no integer value")
        v = self.top
        for _ in range(self.height):
            if v > limit_bits:
                raise Overflow(f"tower {self} exceeds {limit_bits} bits")
            v = 1 << v
        return v

    def __str__(self):
        if self.height == -1:
            return f"log2({self.top})"
        return f"2_{self.height}^{self.top}"


def tower(k, x):
    return TowerExpr(k, x).value()


def tower_leq(lhs, t):
    """Exact test of ``lhs <= t`` without expanding the tower."""
    if lhs <= 0:
        return True
    if t.height == -1:
        # lhs <= log2(top)  iff  2^lhs <= top
        return lhs < t.top.bit_length()
    if t.height == 0:
        return lhs <= t.top
    # lhs <= 2^E  iff  lhs - 1 < 2^E  iff  bitlen(lhs - 1) <= E
    return tower_leq((lhs - 1).bit_length(), TowerExpr(t.height - 1, t.top))


def _log_tower(k, base, exponent):
    """``2_k^{exponent * log2(base)}`` as a TowerExpr, for ``k >= 0``."""
    return TowerExpr(k - 1, base**exponent)


def bound_thm416(a):
    """Norm bound ``2_{ord-1}^{depth * log2(max+1)}`` for a skeleton."""
    o, m, d = skeleton_measures(a)
    if o < 1 or m < 1 or d < 1:
        raise DomainError("the bound needs ord, max and depth all at least 1")
    return _log_tower(o - 1, m + 1, d)


def bound_thm417(n, p, d):
    """Bound on the norm of ``n[{d}p]`` for ``d >= 3``."""
    if d < 3 or n < 0 or p < 0:
        raise DomainError("needs d >= 3 and n, p >= 0")
    return TowerExpr(d - 3, 1 + sum(2 * p**k for k in range(1, n + 1)))


def bound_prop550(t):
    """lhr bound for strongly locally scoped terms: ``2_{ord-1}^{depth * log2(lh+ord+1)}``."""
    o, d, lh = order(t), depth(t), local_height(t)
    if o < 1:
        raise DomainError("order must be at least 1")
    if not scope_report(t).strongly_locally_scoped:
        raise DomainError("term is not strongly locally scoped")
    return _log_tower(o - 1, lh + o + 1, d)


def bound_prop566(t):
    """lhr bound for arbitrary closed terms: ``2_ord^{h * log2(ord+5)}``."""
    o, h = order(t), height(t)
    return _log_tower(o, o + 5, h)


# -- Church families ---------------------------------------------------------


def church_type(p):
    """``A_p`` with ``A_{-2} = o`` and ``A_{k+1} = A_k -> A_k``."""
    if p < -2:
        raise DomainError("type index below -2")
    ty = O
    for _ in range(p + 2):
        ty = Arrow(ty, ty)
    return ty


class _Ids:
    def __init__(self):
        self.counter = itertools.count()

    def var(self, ty, name):
        return Var(next(self.counter), ty, name)


def _numeral(n, p, ids):
    if p < 0:
        raise DomainError("numerals live at A_p for p >= 0")
    f = ids.var(church_type(p - 1), "f")
    x = ids.var(church_type(p - 2), "x")
    body = x
    for _ in range(n):
        body = App(f, body)
    return Abs(f.id, f.type, Abs(x.id, x.type, body, x.name), f.name)


def _identity(ty, ids):
    x = ids.var(ty, "x")
    return Abs(x.id, ty, x, x.name)


@dataclass(frozen=True)
class Numeral:
    n: int
    p: int = 0


@dataclass(frozen=True)
class Iter:
    """``[n]_p^k`` applied to the numeral ``seed`` at ``A_p``."""

    n: int
    p: int
    k: int
    seed: int = 2


@dataclass(frozen=True)
class SFamily:
    n: int
    k: int
    p: int


@dataclass(frozen=True)
class UFamily:
    n: int
    d: int


@dataclass(frozen=True)
class BFamily:
    k: int
    p: int


def _iter(n, p, k, base, ids):
    t = base
    for _ in range(k):
        t = App(_numeral(n, p + 1, ids), t)
    return t


def _twos_down(t, p, ids):
    for q in range(p - 1, -1, -1):
        t = App(t, _numeral(2, q, ids))
    return t


def _b(k, p, ids):
    if k == 0:
        return _numeral(2, p, ids)
    x = ids.var(church_type(p - 1), "x")
    return Abs(x.id, x.type, App(_b(k - 1, p, ids), App(_b(k - 1, p, ids), x)), x.name)


def gen_family(fam):
    ids = _Ids()
    if isinstance(fam, Numeral):
        return _numeral(fam.n, fam.p, ids)
    if isinstance(fam, Iter):
        return _iter(fam.n, fam.p, fam.k, _numeral(fam.seed, fam.p, ids), ids)
    if isinstance(fam, SFamily):
        if fam.p < 0:
            raise DomainError("S needs p >= 0")
        head = _iter(fam.n, fam.p, fam.k, _numeral(2, fam.p, ids), ids)
        return _twos_down(head, fam.p, ids)
    if isinstance(fam, UFamily):
        t = _identity(church_type(-1), ids)
        for _ in range(fam.d):
            t = App(_numeral(fam.n, 1, ids), t)
        return t
    if isinstance(fam, BFamily):
        if fam.p < 1 or fam.k < 0:
            raise DomainError("B needs p >= 1 and k >= 0")
        return _twos_down(_b(fam.k, fam.p, ids), fam.p, ids)
    raise DomainError(f"unknown family {fam!r}")


def id_o():
    return _identity(O, _Ids())


@dataclass
class LowerBoundReport:
    value: int
    steps: int
    ok: bool


def verify_lower_bound(t, budget=DEFAULT_STEP_BUDGET):
    """``t`` must reduce to a numeral ``n``; then ``t id_o`` needs at least ``n`` lhr steps."""
    nf, _ = beta_normalize(t, budget)
    n = numeral_value(nf)
    if n is None:
        raise DomainError("term does not normalise to a Church numeral")
    ident = rename_bound(_identity(O, _Ids()), fresh_supply(t))
    steps = lhr_run(apps(t, ident), budget).count
    return LowerBoundReport(n, steps, steps >= n)
