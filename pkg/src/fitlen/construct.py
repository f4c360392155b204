"""Builders for the example group families.

Groups are assembled from cyclic and elementary-abelian leaves by
direct products, wreath products and iterated wreath powers.  Every
builder propagates a Sylow system: for each prime, a generator list
whose closure is a full Sylow subgroup, pairwise permutable with the
others.  Hall subgroups then come straight from generator unions, with
orders checked against the corresponding part of the group order.

Point layout of a wreath product A wr B with d top points: coordinate
i of A occupies points [i*deg(A), (i+1)*deg(A)); top generators permute
those blocks rigidly.  This layout is part of the stable output
contract, as is left association of iterated products.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .errors import DegreeBudgetError, SylowSystemError, UsageError
from .group import PermGroup, p_part
from .perms import Permutation, _arange, compose_arrays

NATURAL = "natural"
REGULAR = "regular"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- expression trees ----------------------------------------------------

@dataclass(frozen=True)
class Cyclic:
    p: int
    k: int = 1


@dataclass(frozen=True)
class ElemAbelian:
    p: int
    k: int


@dataclass(frozen=True)
class Direct:
    left: "GroupExpr"
    right: "GroupExpr"


@dataclass(frozen=True)
class Wreath:
    base: "GroupExpr"
    top: "GroupExpr"
    action: str = NATURAL


@dataclass(frozen=True)
class Iterated:
    expr: "GroupExpr"
    times: int


GroupExpr = Union[Cyclic, ElemAbelian, Direct, Wreath, Iterated]


def validate_expr(expr: GroupExpr) -> None:
    if isinstance(expr, (Cyclic, ElemAbelian)):
        if not _is_prime(expr.p):
            raise UsageError("leaf prime %r is not prime" % (expr.p,))
        if expr.k < 1:
            raise UsageError("leaf exponent must be at least 1")
    elif isinstance(expr, Direct):
        validate_expr(expr.left)
        validate_expr(expr.right)
    elif isinstance(expr, Wreath):
        if expr.action not in (NATURAL, REGULAR):
            raise UsageError("unknown wreath action %r" % (expr.action,))
        validate_expr(expr.base)
        validate_expr(expr.top)
    elif isinstance(expr, Iterated):
        if expr.times < 1:
            raise UsageError("iterated power needs l >= 1")
        validate_expr(expr.expr)
    else:
        raise UsageError("not a group expression: %r" % (expr,))


def expr_order(expr: GroupExpr, default_action: str = NATURAL) -> int:
    if isinstance(expr, (Cyclic, ElemAbelian)):
        return expr.p ** expr.k
    if isinstance(expr, Direct):
        return (expr_order(expr.left, default_action)
                * expr_order(expr.right, default_action))
    if isinstance(expr, Wreath):
        d = _top_point_count(expr.top, expr.action, default_action)
        return (expr_order(expr.base, default_action) ** d
                * expr_order(expr.top, default_action))
    if isinstance(expr, Iterated):
        inner = expr.expr
        result = expr_order(inner, default_action)
        d = _top_point_count(inner, default_action, default_action)
        for _ in range(expr.times - 1):
            result = result ** d * expr_order(inner, default_action)
        return result
    raise UsageError("not a group expression: %r" % (expr,))


def expr_degree(expr: GroupExpr, default_action: str = NATURAL) -> int:
    if isinstance(expr, Cyclic):
        return expr.p ** expr.k
    if isinstance(expr, ElemAbelian):
        return expr.k * expr.p
    if isinstance(expr, Direct):
        return (expr_degree(expr.left, default_action)
                + expr_degree(expr.right, default_action))
    if isinstance(expr, Wreath):
        d = _top_point_count(expr.top, expr.action, default_action)
        return expr_degree(expr.base, default_action) * d
    if isinstance(expr, Iterated):
        inner = expr.expr
        deg = expr_degree(inner, default_action)
        d = _top_point_count(inner, default_action, default_action)
        for _ in range(expr.times - 1):
            deg *= d
        return deg
    raise UsageError("not a group expression: %r" % (expr,))


def _top_point_count(top: GroupExpr, action: str, default_action: str) -> int:
    if action == REGULAR:
        return expr_order(top, default_action)
    return expr_degree(top, default_action)


def expr_to_text(expr: GroupExpr) -> str:
    if isinstance(expr, Cyclic):
        return "C(%d,%d)" % (expr.p, expr.k)
    if isinstance(expr, ElemAbelian):
        return "EA(%d,%d)" % (expr.p, expr.k)
    if isinstance(expr, Direct):
        return "D(%s,%s)" % (expr_to_text(expr.left), expr_to_text(expr.right))
    if isinstance(expr, Wreath):
        tag = "W" if expr.action == NATURAL else "WR"
        return "%s(%s,%s)" % (tag, expr_to_text(expr.base), expr_to_text(expr.top))
    if isinstance(expr, Iterated):
        return "IT(%s,%d)" % (expr_to_text(expr.expr), expr.times)
    raise UsageError("not a group expression: %r" % (expr,))


# -- constructed groups ---------------------------------------------------

@dataclass
class ConstructedGroup:
    """A permutation group together with its construction and Sylow system.

    system_checked records whether the per-prime and per-pair order
    checks ran at build time; Hall-chain construction only takes the
    known-order shortcut for checked systems and measures ad-hoc ones
    exactly.
    """

    group: PermGroup
    expr: Optional[GroupExpr]
    system: dict[int, tuple[Permutation, ...]]
    system_checked: bool = False
    _hall_chain_cache: dict = field(default_factory=dict, repr=False)
    _h_cache: dict = field(default_factory=dict, repr=False)
    _d_cache: dict = field(default_factory=dict, repr=False)
    _cache_lock: threading.RLock = field(default_factory=threading.RLock,
                                         repr=False)

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def primes(self) -> tuple[int, ...]:
        return self.group.primes

    @property
    def num_primes(self) -> int:
        return len(self.group.primes)

    def describe(self) -> str:
        return expr_to_text(self.expr) if self.expr is not None else "<adhoc>"


def trivial_constructed(degree: int = 1) -> ConstructedGroup:
    return ConstructedGroup(PermGroup.trivial(degree), None, {})


# -- leaf builders --------------------------------------------------------

def cyclic(p: int, k: int = 1, limits: Limits = DEFAULT_LIMITS) -> ConstructedGroup:
    validate_expr(Cyclic(p, k))
    n = p ** k
    if n > limits.max_degree:
        raise DegreeBudgetError(
            "cyclic leaf needs degree %d > budget %d" % (n, limits.max_degree), n)
    images = np.roll(np.arange(n, dtype=np.intp), -1)
    gen = Permutation(images)
    group = PermGroup(n, (gen,), known_order=n)
    cg = ConstructedGroup(group, Cyclic(p, k), {p: (gen,)})
    _verify_system(cg)
    return cg


def elem_abelian(p: int, k: int, limits: Limits = DEFAULT_LIMITS) -> ConstructedGroup:
    validate_expr(ElemAbelian(p, k))
    n = k * p
    if n > limits.max_degree:
        raise DegreeBudgetError(
            "elementary abelian leaf needs degree %d > budget %d"
            % (n, limits.max_degree), n)
    gens = []
    for i in range(k):
        arr = np.arange(n, dtype=np.intp)
        arr[i * p:(i + 1) * p] = np.roll(np.arange(i * p, (i + 1) * p), -1)
        gens.append(Permutation(arr))
    group = PermGroup(n, tuple(gens), known_order=p ** k)
    cg = ConstructedGroup(group, ElemAbelian(p, k), {p: tuple(gens)})
    _verify_system(cg)
    return cg


# -- combinators ----------------------------------------------------------

def _shift(arr: np.ndarray, offset: int, total: int) -> np.ndarray:
    out = np.arange(total, dtype=np.intp)
    out[offset:offset + arr.size] = arr + offset
    return out


def direct_product(A: ConstructedGroup, B: ConstructedGroup,
                   limits: Limits = DEFAULT_LIMITS) -> ConstructedGroup:
    n = A.degree + B.degree
    if n > limits.max_degree:
        raise DegreeBudgetError(
            "direct product needs degree %d > budget %d" % (n, limits.max_degree), n)
    gens = [Permutation(_shift(g.images, 0, n), _checked=False)
            for g in A.group.generators]
    gens += [Permutation(_shift(g.images, A.degree, n), _checked=False)
             for g in B.group.generators]
    order = A.order * B.order
    group = PermGroup(n, tuple(gens), known_order=order)
    system: dict[int, tuple[Permutation, ...]] = {}
    for p in sorted(set(A.system) | set(B.system)):
        entry = [Permutation(_shift(g.images, 0, n))
                 for g in A.system.get(p, ())]
        entry += [Permutation(_shift(g.images, A.degree, n))
                  for g in B.system.get(p, ())]
        system[p] = tuple(entry)
    expr = None
    if A.expr is not None and B.expr is not None:
        expr = Direct(A.expr, B.expr)
    cg = ConstructedGroup(group, expr, system)
    _verify_system(cg)
    return cg


def _enumerate_elements(B: ConstructedGroup) -> tuple[list[np.ndarray], dict[bytes, int]]:
    gens = [g.images for g in B.group.generators]
    ident = _arange(B.degree)
    elems = [ident]
    index = {ident.tobytes(): 0}
    qi = 0
    while qi < len(elems):
        x = elems[qi]
        qi += 1
        for g in gens:
            y = compose_arrays(x, g)
            key = y.tobytes()
            if key not in index:
                index[key] = len(elems)
                elems.append(y)
    return elems, index


def _right_translation(elems, index, g: np.ndarray) -> np.ndarray:
    out = np.empty(len(elems), dtype=np.intp)
    for i, x in enumerate(elems):
        out[i] = index[compose_arrays(x, g).tobytes()]
    return out


def _lift_block_perm(block_perm: np.ndarray, m: int) -> np.ndarray:
    # point b*m + x -> block_perm[b]*m + x
    d = block_perm.size
    return (np.repeat(block_perm * m, m)
            + np.tile(np.arange(m, dtype=np.intp), d))


def _embed(arr: np.ndarray, block: int, m: int, total: int) -> np.ndarray:
    out = np.arange(total, dtype=np.intp)
    out[block * m:(block + 1) * m] = arr + block * m
    return out


def _block_orbit_reps(d: int, block_perms: list[np.ndarray]) -> list[int]:
    seen = [False] * d
    reps = []
    for start in range(d):
        if seen[start]:
            continue
        reps.append(start)
        queue = [start]
        seen[start] = True
        while queue:
            pt = queue.pop()
            for g in block_perms:
                img = int(g[pt])
                if not seen[img]:
                    seen[img] = True
                    queue.append(img)
    return reps


def wreath_product(A: ConstructedGroup, B: ConstructedGroup,
                   action: str = NATURAL,
                   limits: Limits = DEFAULT_LIMITS) -> ConstructedGroup:
    if action not in (NATURAL, REGULAR):
        raise UsageError("unknown wreath action %r" % (action,))
    m = A.degree
    if action == NATURAL:
        d = B.degree
    else:
        d = B.order
    n = m * d
    if n > limits.max_degree:
        hint = ""
        if action == REGULAR:
            hint = " (regular action; natural action would need degree %d)" % (
                m * B.degree)
        raise DegreeBudgetError(
            "degree budget exceeded: wreath product needs degree %d > %d%s"
            % (n, limits.max_degree, hint), n)

    if action == NATURAL:
        top_gen_blocks = [g.images for g in B.group.generators]
        top_sylow_blocks = {
            p: [g.images for g in gens] for p, gens in B.system.items()
        }
    else:
        elems, index = _enumerate_elements(B)
        top_gen_blocks = [
            _right_translation(elems, index, g.images)
            for g in B.group.generators
        ]
        top_sylow_blocks = {
            p: [_right_translation(elems, index, g.images) for g in gens]
            for p, gens in B.system.items()
        }

    reps = _block_orbit_reps(d, top_gen_blocks)
    gens: list[Permutation] = []
    for rep in reps:
        for a in A.group.generators:
            gens.append(Permutation(_embed(a.images, rep, m, n), _checked=False))
    for t in top_gen_blocks:
        gens.append(Permutation(_lift_block_perm(t, m), _checked=False))

    order = A.order ** d * B.order
    group = PermGroup(n, tuple(gens), known_order=order)

    system: dict[int, tuple[Permutation, ...]] = {}
    for p in sorted(set(A.system) | set(B.system)):
        entry = []
        for a in A.system.get(p, ()):
            for block in range(d):
                entry.append(Permutation(_embed(a.images, block, m, n)))
        for t in top_sylow_blocks.get(p, []):
            entry.append(Permutation(_lift_block_perm(t, m)))
        system[p] = tuple(entry)

    expr = None
    if A.expr is not None and B.expr is not None:
        expr = Wreath(A.expr, B.expr, action)
    cg = ConstructedGroup(group, expr, system)
    _verify_system(cg)
    return cg


def iterated(H: ConstructedGroup, times: int, action: str = NATURAL,
             limits: Limits = DEFAULT_LIMITS) -> ConstructedGroup:
    if times < 1:
        raise UsageError("iterated power needs l >= 1, got %d" % times)
    result = H
    for _ in range(times - 1):
        result = wreath_product(result, H, action, limits)
    return result


def build(expr: GroupExpr, default_action: str = NATURAL,
          limits: Limits = DEFAULT_LIMITS) -> ConstructedGroup:
    """Materialize an expression as a permutation group with Sylow system."""
    validate_expr(expr)
    needed = expr_degree(expr, default_action)
    if needed > limits.max_degree:
        hint = ""
        if _uses_regular(expr) or default_action == REGULAR:
            natural_deg = expr_degree(_all_natural(expr), NATURAL)
            hint = (" (involves the regular action; all-natural would need"
                    " degree %d)" % natural_deg)
        raise DegreeBudgetError(
            "degree budget exceeded: expression needs degree %d > %d%s"
            % (needed, limits.max_degree, hint), needed)
    return _build(expr, default_action, limits)


def _uses_regular(expr: GroupExpr) -> bool:
    if isinstance(expr, Wreath):
        return (expr.action == REGULAR or _uses_regular(expr.base)
                or _uses_regular(expr.top))
    if isinstance(expr, Direct):
        return _uses_regular(expr.left) or _uses_regular(expr.right)
    if isinstance(expr, Iterated):
        return _uses_regular(expr.expr)
    return False


def _all_natural(expr: GroupExpr) -> GroupExpr:
    if isinstance(expr, Wreath):
        return Wreath(_all_natural(expr.base), _all_natural(expr.top), NATURAL)
    if isinstance(expr, Direct):
        return Direct(_all_natural(expr.left), _all_natural(expr.right))
    if isinstance(expr, Iterated):
        return Iterated(_all_natural(expr.expr), expr.times)
    return expr


def _build(expr: GroupExpr, default_action: str, limits: Limits) -> ConstructedGroup:
    if isinstance(expr, Cyclic):
        return cyclic(expr.p, expr.k, limits)
    if isinstance(expr, ElemAbelian):
        return elem_abelian(expr.p, expr.k, limits)
    if isinstance(expr, Direct):
        return direct_product(_build(expr.left, default_action, limits),
                              _build(expr.right, default_action, limits),
                              limits)
    if isinstance(expr, Wreath):
        return wreath_product(_build(expr.base, default_action, limits),
                              _build(expr.top, default_action, limits),
                              expr.action, limits)
    if isinstance(expr, Iterated):
        return iterated(_build(expr.expr, default_action, limits),
                        expr.times, default_action, limits)
    raise UsageError("not a group expression: %r" % (expr,))


# -- expression text ---------------------------------------------------------

_TOKEN_NAMES = ("C", "EA", "D", "W", "WR", "IT")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise UsageError("parse error at position %d: %s" % (self.pos, message))

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.error("expected %r" % ch)
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        word = self.text[start:self.pos]
        if word not in _TOKEN_NAMES:
            self.pos = start
            self.error("expected one of %s" % (", ".join(_TOKEN_NAMES)))
        return word

    def expr(self) -> GroupExpr:
        word = self.name()
        self.expect("(")
        if word == "C" or word == "EA":
            p = self.integer()
            self.expect(",")
            k = self.integer()
            node: GroupExpr = Cyclic(p, k) if word == "C" else ElemAbelian(p, k)
        elif word == "IT":
            inner = self.expr()
            self.expect(",")
            times = self.integer()
            node = Iterated(inner, times)
        else:
            left = self.expr()
            self.expect(",")
            right = self.expr()
            if word == "D":
                node = Direct(left, right)
            elif word == "W":
                node = Wreath(left, right, NATURAL)
            else:
                node = Wreath(left, right, REGULAR)
        self.expect(")")
        return node


def parse_expr(text: str) -> GroupExpr:
    """Parse the expression language: C(p,k), EA(p,k), D(x,y), W(x,y),
    WR(x,y), IT(x,l).  W is the natural-action wreath product, WR the
    regular one; IT iterates with the action chosen at build time."""
    parser = _Parser(text)
    node = parser.expr()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error("trailing input")
    validate_expr(node)
    return node


# -- Sylow system checks ---------------------------------------------------

def hall_chain(cg: ConstructedGroup, sigma: tuple[int, ...]):
    """Verified chain for the Hall subgroup of the given prime set.

    Chains are cached per canonical sigma on the constructed group; the
    order is checked against the sigma-part of |G| and a mismatch
    raises SylowSystemError.
    """
    from .chain import build_chain

    key = tuple(sorted(set(sigma) & set(cg.primes)))
    with cg._cache_lock:
        cached = cg._hall_chain_cache.get(key)
    if cached is not None:
        return cached
    if len(key) > 1:
        # join the already-reduced Sylow generator lists
        arrays = []
        for p in key:
            arrays.extend(hall_chain(cg, (p,))[1])
    else:
        arrays = [g.images for g in cg.system[key[0]]]
    expected = p_part(cg.group.factored_order, key)
    if cg.system_checked:
        chain, kept = build_chain(cg.degree, arrays, target_order=expected,
                                  batch=True)
    else:
        chain, kept = build_chain(cg.degree, arrays, batch=True)
        if chain.order() != expected:
            raise SylowSystemError(
                "Sylow system corrupt: %r-part should be %d but the "
                "generators give %d" % (key, expected, chain.order()))
    result = (chain, [arrays[i] for i in kept])
    with cg._cache_lock:
        cg._hall_chain_cache.setdefault(key, result)
        return cg._hall_chain_cache[key]


def _verify_system(cg: ConstructedGroup) -> None:
    primes = cg.primes
    if tuple(sorted(cg.system)) != primes:
        raise SylowSystemError(
            "system primes %r do not match group primes %r"
            % (tuple(sorted(cg.system)), primes))
    cg.system_checked = True
    for i, p in enumerate(primes):
        hall_chain(cg, (p,))
        for q in primes[i + 1:]:
            hall_chain(cg, (p, q))
