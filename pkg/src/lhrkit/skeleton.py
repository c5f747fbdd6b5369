"""Skeletons: finite trees with natural labels on nodes and edges.

A skeleton ``n[{d1}a1, ..., {dp}ap]`` has root label ``n`` and one child
``ai`` under each edge labelled ``di``.  Values are kept canonical: children
are deduplicated and kept in a fixed order, and every distinct skeleton is
built once, so structural equality is object identity.
"""

from __future__ import annotations

import itertools
import weakref
from functools import lru_cache

from .errors import BudgetExceeded, DomainError

DEFAULT_NODE_BUDGET = 10**6


class Skeleton:
    """Hash-consed skeleton: structurally equal values are the same object."""

    __slots__ = ("label", "children", "uid", "size", "__weakref__")

    _table = weakref.WeakValueDictionary()
    _uids = itertools.count()

    def __new__(cls, label, children=()):
        if label < 0:
            raise DomainError(f"negative node label {label}")
        kids = {}
        for d, child in children:
            if d < 0:
                raise DomainError(f"negative edge label {d}")
            kids[(d, child.uid)] = (d, child)
        key = (label, tuple(sorted(kids)))
        found = cls._table.get(key)
        if found is not None:
            return found
        self = object.__new__(cls)
        self.label = label
        self.children = tuple(kids[k] for k in key[1])
        self.uid = next(cls._uids)
        self.size = 1 + sum(c.size for _, c in self.children)
        cls._table[key] = self
        return self

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return self.uid

    def __lt__(self, other):
        return structural_key(self) < structural_key(other)

    def __reduce__(self):
        return (Skeleton, (self.label, self.children))

    def __repr__(self):
        return f"Skeleton({show(self)!r})"

    def __str__(self):
        return show(self)

    @property
    def is_atomic(self):
        return not self.children


def structural_key(a):
    """Nested-tuple key giving a canonical order on skeletons (for display)."""
    return (a.label, tuple(sorted((d, structural_key(c)) for d, c in a.children)))


def atom(n):
    return Skeleton(n)


def show(a):
    if not a.children:
        return str(a.label)
    kids = sorted(a.children, key=lambda e: (e[0], structural_key(e[1])))
    inner = ",".join(f"{{{d}}}{show(c)}" for d, c in kids)
    return f"{a.label}[{inner}]"


def graft(a, d, b):
    """``a ._d b``: add ``b`` as a new child of the root of ``a`` along edge ``d``."""
    return Skeleton(a.label, a.children + ((d, b),))


def join(skels):
    """Least upper bound: maximal root label, union of all children."""
    skels = list(skels)
    if not skels:
        return Skeleton(0)
    return Skeleton(max(a.label for a in skels), [c for a in skels for c in a.children])


def ssum(skels):
    """Sum: roots add up, children are pooled."""
    skels = list(skels)
    return Skeleton(sum(a.label for a in skels), [c for a in skels for c in a.children])


def add_root(k, a):
    """``k + a``: add ``k`` to the root label."""
    return Skeleton(a.label + k, a.children)


def reducts(a):
    """All one-step reducts, one per child whose edge label is positive.

    ``n[{d}b, rest] ~> b ._{d-1} (n-1)[{d}b, rest]`` when ``n >= 1`` and ``d >= 1``.
    """
    if a.label < 1:
        return []
    lowered = Skeleton(a.label - 1, a.children)
    return [graft(b, d - 1, lowered) for d, b in a.children if d >= 1]


def measures(a):
    """Return ``(ord, max, depth)``; ord is the largest edge label (0 when there are none)."""
    ordv, maxv, depth = 0, 0, 0
    stack = [(a, 1)]
    while stack:
        node, lvl = stack.pop()
        maxv = max(maxv, node.label)
        depth = max(depth, lvl)
        for d, c in node.children:
            ordv = max(ordv, d)
            stack.append((c, lvl + 1))
    return ordv, maxv, depth


def size(a):
    return a.size


def thread_like(depth, edge, label):
    """Thread ``T(depth, edge, label)``: a path of ``depth`` nodes, all labelled alike."""
    if depth < 1:
        raise DomainError("thread depth must be at least 1")
    a = Skeleton(label)
    for _ in range(depth - 1):
        a = Skeleton(label, [(edge, a)])
    return a


@lru_cache(maxsize=1 << 18)
def embeds(a, b):
    """``a`` embeds into ``b``: smaller root and every child of ``a`` is dominated by one of ``b``."""
    if a.label > b.label:
        return False
    for d, c in a.children:
        if not any(d <= e and embeds(c, k) for e, k in b.children):
            return False
    return True


@lru_cache(maxsize=1 << 18)
def prune(a):
    """Drop children dominated by a sibling.

    The result embeds into ``a`` and ``a`` embeds into it, so both have the
    same norm; this shrinks the state space of the norm search considerably.
    """
    kept = []
    for d, c in a.children:
        c = prune(c)
        if any(d <= e and embeds(c, k) for e, k in kept):
            continue
        kept = [(e, k) for e, k in kept if not (e <= d and embeds(k, c))]
        kept.append((d, c))
    return Skeleton(a.label, kept)


def _maximal(skels):
    out = []
    for s in skels:
        if any(embeds(s, t) for t in out):
            continue
        out = [t for t in out if not embeds(t, s)]
        out.append(s)
    return out


def norm(a, budget=DEFAULT_NODE_BUDGET, memo=None):
    """Length of the longest reduction sequence starting at ``a``.

    Depth-first search over the reduction graph, memoised on canonical pruned
    skeletons.  ``budget`` bounds the number of distinct states visited.
    """
    memo = {} if memo is None else memo
    root = prune(a)
    if root in memo:
        return memo[root]
    visited = 0
    stack = [(root, None)]
    while stack:
        node, succ = stack[-1]
        if node in memo:
            stack.pop()
            continue
        if succ is None:
            visited += 1
            if visited > budget:
                raise BudgetExceeded("skeleton norm", budget)
            succ = _maximal(prune(r) for r in reducts(node))
            stack[-1] = (node, succ)
            pending = [s for s in succ if s not in memo]
            if pending:
                stack.extend((s, None) for s in pending)
                continue
        stack.pop()
        memo[node] = 1 + max((memo[s] for s in succ), default=-1)
    return memo[root]


def norm_brute(a, budget=DEFAULT_NODE_BUDGET):
    """Reference norm: plain memoised search without pruning."""
    memo = {}
    count = [0]

    def go(x):
        if x in memo:
            return memo[x]
        count[0] += 1
        if count[0] > budget:
            raise BudgetExceeded("skeleton norm", budget)
        best = 0
        for r in reducts(x):
            best = max(best, 1 + go(r))
        memo[x] = best
        return best

    return go(a)


def longest_path(a, budget=DEFAULT_NODE_BUDGET):
    """A witness reduction sequence of maximal length, starting with ``a``."""
    memo = {}
    n = norm(a, budget, memo)
    path = [a]
    cur = a
    while True:
        best = None
        for r in reducts(cur):
            if norm(r, budget, memo) == norm(cur, budget, memo) - 1:
                best = r
                break
        if best is None:
            break
        path.append(best)
        cur = best
    assert len(path) == n + 1
    return path


def norm_at_least(a, k, budget=DEFAULT_NODE_BUDGET):
    """Decide ``norm(a) >= k`` by looking for one reduction sequence of length ``k``.

    Cheaper than :func:`norm` when the norm is far larger than ``k``.
    """
    failed = {}
    visited = [0]

    def go(x, k):
        if k <= 0:
            return True
        if failed.get(x, k + 1) <= k:
            return False
        visited[0] += 1
        if visited[0] > budget:
            raise BudgetExceeded("skeleton norm lower bound", budget)
        for r in _maximal(prune(r) for r in reducts(x)):
            if go(r, k - 1):
                return True
        failed[x] = min(failed.get(x, k), k)
        return False

    return go(prune(a), k)
