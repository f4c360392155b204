"""Brute-force ground truth on tiny groups.

Everything here enumerates elements explicitly (as image tuples) and is
capped by the oracle limit.  It exists to cross-check the chain-based
machinery along an independent route: sigma-cores via normal closures
of single elements, the Fitting subgroup as the join of the p-cores,
the Fitting length through the upper series with genuine quotient
groups, Hall subgroups by greedy search instead of Sylow systems,
product-set factorizations, and the empirical harness for the two
trifactorization conjectures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .config import DEFAULT_LIMITS, Limits
from .errors import NotSolubleError, OracleScaleError
from .group import PermGroup, factorize

Elem = tuple[int, ...]


def _mul(a: Elem, b: Elem) -> Elem:
    # apply a first, then b
    return tuple(b[x] for x in a)


def _inv(a: Elem) -> Elem:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def element_order(a: Elem) -> int:
    ident = tuple(range(len(a)))
    n = 1
    x = a
    while x != ident:
        x = _mul(x, a)
        n += 1
    return n


class TinyGroup:
    """A fully enumerated permutation group on {0..degree-1}."""

    def __init__(self, degree: int, elements: list[Elem], gens: list[Elem]):
        self.degree = degree
        self.elements = elements
        self.gens = gens
        self.index = {e: i for i, e in enumerate(elements)}
        self._classes: Optional[list[list[Elem]]] = None
        self._class_closures: Optional[list[list[Elem]]] = None
        self._core_cache: dict[tuple[int, ...], "TinyGroup"] = {}
        self._hall_cache: dict[tuple[int, ...], "TinyGroup"] = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, e: Elem) -> bool:
        return e in self.index

    def identity(self) -> Elem:
        return tuple(range(self.degree))

    def primes(self) -> tuple[int, ...]:
        if self.order == 1:
            return ()
        return tuple(sorted(factorize(self.order)))

    def is_sigma_group(self, sigma: Iterable[int]) -> bool:
        return set(self.primes()) <= set(sigma)

    def conjugacy_classes(self) -> list[list[Elem]]:
        """Conjugacy classes in first-seen element order."""
        if self._classes is None:
            seen: set[Elem] = set()
            classes = []
            pairs = [(g, _inv(g)) for g in self.gens]
            for e in self.elements:
                if e in seen:
                    continue
                cls = [e]
                seen.add(e)
                qi = 0
                while qi < len(cls):
                    x = cls[qi]
                    qi += 1
                    for g, gi in pairs:
                        y = _mul(_mul(gi, x), g)
                        if y not in seen:
                            seen.add(y)
                            cls.append(y)
                classes.append(cls)
            self._classes = classes
        return self._classes


def _bfs_closure(degree: int, gens: Sequence[Elem], cap: int) -> list[Elem]:
    ident = tuple(range(degree))
    elems = [ident]
    seen = {ident}
    qi = 0
    while qi < len(elems):
        x = elems[qi]
        qi += 1
        for g in gens:
            y = _mul(x, g)
            if y not in seen:
                if len(elems) >= cap:
                    raise OracleScaleError(
                        "oracle scale exceeded: more than %d elements" % cap)
                seen.add(y)
                elems.append(y)
    return elems


def enumerate_group(G, limits: Limits = DEFAULT_LIMITS,
                    cap: Optional[int] = None) -> TinyGroup:
    """Enumerate a PermGroup (or generator list) by breadth-first closure."""
    if isinstance(G, TinyGroup):
        return G
    if isinstance(G, PermGroup):
        degree = G.degree
        perms = G.generators
    else:
        perms = tuple(G)
        degree = perms[0].degree if perms else 1
    gens = [tuple(int(x) for x in g.images) for g in perms]
    cap = cap if cap is not None else limits.oracle_cap
    return TinyGroup(degree, _bfs_closure(degree, gens, cap), gens)


def subgroup_closure(T: TinyGroup, gens: Sequence[Elem]) -> TinyGroup:
    """Subgroup of T generated by the given elements."""
    gens = [g for g in gens if g != T.identity()]
    elems = _bfs_closure(T.degree, gens, T.order + 1)
    return TinyGroup(T.degree, elems, gens)


# -- cores, Fitting subgroup, upper Fitting length --------------------------

def _class_closures(T: TinyGroup) -> list[list[Elem]]:
    # normal closure <x^G> for one representative per class; conjugate
    # elements share theirs
    if T._class_closures is None:
        out = []
        for cls in T.conjugacy_classes():
            out.append(_bfs_closure(T.degree, cls, T.order + 1))
        T._class_closures = out
    return T._class_closures


def core_sigma(T: TinyGroup, sigma: Iterable[int]) -> TinyGroup:
    """O_sigma(T): the largest normal sigma-subgroup.

    Generated by every element whose normal closure is a sigma-group;
    products of normal sigma-subgroups are again normal sigma-subgroups,
    so that join is exact.
    """
    key = tuple(sorted(set(sigma)))
    cached = T._core_cache.get(key)
    if cached is not None:
        return cached
    sigma_set = set(key)
    gens: list[Elem] = []
    current: set[Elem] = {T.identity()}
    for cls, closure in zip(T.conjugacy_classes(), _class_closures(T)):
        if cls[0] in current:  # whole class is, the join so far being normal
            continue
        if len(closure) > 1 and not set(factorize(len(closure))) <= sigma_set:
            continue
        gens.extend(cls)
        current = set(_bfs_closure(T.degree, gens, T.order + 1))
    result = TinyGroup(T.degree, sorted(current), gens)
    T._core_cache[key] = result
    return result


def fitting_subgroup(T: TinyGroup) -> TinyGroup:
    """F(T): the join of the p-cores over the primes dividing |T|."""
    gens: list[Elem] = []
    for p in T.primes():
        gens.extend(core_sigma(T, (p,)).gens)
    elems = _bfs_closure(T.degree, gens, T.order + 1)
    return TinyGroup(T.degree, sorted(elems), gens)


def is_nilpotent_tiny(T: TinyGroup) -> bool:
    return fitting_subgroup(T).order == T.order


def quotient_by(T: TinyGroup, N: TinyGroup) -> TinyGroup:
    """T/N realized by left multiplication on the cosets of N.

    N must be normal in T; only sound at tiny scale, which is the point
    of this module.
    """
    coset_of: dict[Elem, int] = {}
    reps: list[Elem] = []
    for e in T.elements:
        if e in coset_of:
            continue
        cid = len(reps)
        reps.append(e)
        for n in N.elements:
            coset_of[_mul(e, n)] = cid
    qgens = []
    for g in T.gens:
        qgens.append(tuple(coset_of[_mul(rep, g)] for rep in reps))
    qdeg = max(len(reps), 1)
    elems = _bfs_closure(qdeg, qgens, len(reps) + 1)
    return TinyGroup(qdeg, elems, qgens)


def fitting_length_upper(T: TinyGroup,
                         limits: Limits = DEFAULT_LIMITS) -> int:
    """Length of the upper Fitting series, via iterated quotients by F."""
    steps = 0
    current = T
    while current.order > 1:
        F = fitting_subgroup(current)
        if F.order == 1:
            raise NotSolubleError(
                "Fitting subgroup trivial at order %d" % current.order)
        current = quotient_by(current, F)
        steps += 1
        if steps > limits.series_step_limit:
            raise NotSolubleError("upper Fitting series exceeded step limit")
    return steps


# -- Hall subgroups by search ------------------------------------------------

def hall_subgroup_search(T: TinyGroup, sigma: Iterable[int]) -> TinyGroup:
    """A Hall sigma-subgroup found greedily, independent of any Sylow system.

    Every maximal sigma-subgroup of a soluble group is a Hall
    sigma-subgroup, so greedily absorbing sigma-elements that keep the
    closure a sigma-group terminates at one; the order is checked.
    """
    key = tuple(sorted(set(sigma) & set(T.primes())))
    cached = T._hall_cache.get(key)
    if cached is not None:
        return cached
    sigma_set = set(key)
    target = 1
    for p, e in factorize(T.order).items():
        if p in sigma_set:
            target *= p ** e
    gens: list[Elem] = []
    current: set[Elem] = {T.identity()}
    if target > 1:
        for x in T.elements:
            if len(current) == target:
                break
            if x in current:
                continue
            if not set(factorize(element_order(x))) <= sigma_set:
                continue
            candidate = _bfs_closure(T.degree, gens + [x], T.order + 1)
            if set(factorize(len(candidate))) <= sigma_set:
                gens.append(x)
                current = set(candidate)
    if len(current) != target:
        raise NotSolubleError(
            "no Hall subgroup for %r: reached order %d, wanted %d"
            % (key, len(current), target))
    result = TinyGroup(T.degree, sorted(current), gens)
    T._hall_cache[key] = result
    return result


def core_containment_holds(T: TinyGroup, sigma: Iterable[int],
                                  p: int, q: int) -> bool:
    """Whether O_p(G_sigma) lies inside O_{q'}(G), for p != q in sigma."""
    sigma = tuple(sorted(set(sigma)))
    if p == q or p not in sigma or q not in sigma:
        raise ValueError("need two distinct primes inside sigma")
    hall = hall_subgroup_search(T, sigma)
    inner = core_sigma(hall, (p,))
    qprime = tuple(r for r in T.primes() if r != q)
    outer = core_sigma(T, qprime)
    outer_set = outer.index
    return all(e in outer_set for e in inner.elements)


# -- product sets and the conjecture harness --------------------------------

def product_set(H_elems: Sequence[Elem], K_elems: Sequence[Elem],
                limits: Limits = DEFAULT_LIMITS) -> set[Elem]:
    if len(H_elems) * len(K_elems) > limits.pair_budget:
        raise OracleScaleError(
            "product-set budget exceeded: %d * %d pairs"
            % (len(H_elems), len(K_elems)))
    return {_mul(h, k) for h in H_elems for k in K_elems}


def product_set_order(H: TinyGroup, K: TinyGroup,
                      limits: Limits = DEFAULT_LIMITS) -> int:
    """|HK| by hashed enumeration."""
    return len(product_set(H.elements, K.elements, limits))


@dataclass(frozen=True)
class TrifactorReport:
    """Outcome of one trifactorization instance; data, not a verdict."""

    orders: tuple[int, int, int, int]        # |G|, |H|, |K|, |L|
    product_orders: tuple[int, int, int]     # |HK|, |KL|, |LH|
    hypothesis_met: bool
    h_values: Optional[tuple[int, int, int, int]]  # h(G), h(H), h(K), h(L)
    bound_value: Optional[int]               # h(H)+h(K)+h(L)-2
    inequality_holds: Optional[bool]
    all_nilpotent: bool
    kegel_confirmed: Optional[bool]          # G nilpotent, when all three are


def check_trifactorization(T: TinyGroup,
                           H_gens: Sequence[Elem],
                           K_gens: Sequence[Elem],
                           L_gens: Sequence[Elem],
                           limits: Limits = DEFAULT_LIMITS) -> TrifactorReport:
    """G = HK = KL = LH harness; reports outcomes without asserting them."""
    H = subgroup_closure(T, H_gens)
    K = subgroup_closure(T, K_gens)
    L = subgroup_closure(T, L_gens)
    hk = product_set_order(H, K, limits)
    kl = product_set_order(K, L, limits)
    lh = product_set_order(L, H, limits)
    met = hk == T.order and kl == T.order and lh == T.order
    all_nilp = all(is_nilpotent_tiny(X) for X in (H, K, L))
    h_values = None
    bound = None
    holds = None
    kegel = None
    if met:
        h_values = tuple(fitting_length_upper(X, limits) for X in (T, H, K, L))
        bound = h_values[1] + h_values[2] + h_values[3] - 2
        holds = h_values[0] <= bound
        if all_nilp:
            kegel = is_nilpotent_tiny(T)
    return TrifactorReport(
        orders=(T.order, H.order, K.order, L.order),
        product_orders=(hk, kl, lh),
        hypothesis_met=met,
        h_values=h_values,
        bound_value=bound,
        inequality_holds=holds,
        all_nilpotent=all_nilp,
        kegel_confirmed=kegel,
    )


@dataclass(frozen=True)
class TriProductReport:
    """Outcome of one nilpotent triple-product instance."""

    orders: tuple[int, int, int, int]          # |G|, |N1|, |N2|, |N3|
    triple_product_order: int
    pairwise_permutable: bool
    all_nilpotent: bool
    hypothesis_met: bool
    pair_h: Optional[tuple[int, int, int]]      # h(N1N2), h(N2N3), h(N3N1)
    bound_value: Optional[int]
    h_g: Optional[int]
    inequality_holds: Optional[bool]


def check_nilpotent_triple_product(T: TinyGroup,
                                   n1_gens: Sequence[Elem],
                                   n2_gens: Sequence[Elem],
                                   n3_gens: Sequence[Elem],
                                   limits: Limits = DEFAULT_LIMITS) -> TriProductReport:
    """G = N1 N2 N3 harness with pairwise-permutable nilpotent factors."""
    Ns = [subgroup_closure(T, g) for g in (n1_gens, n2_gens, n3_gens)]
    pair_sets = {}
    permutable = True
    for (i, j) in ((0, 1), (1, 2), (2, 0)):
        ij = product_set(Ns[i].elements, Ns[j].elements, limits)
        ji = product_set(Ns[j].elements, Ns[i].elements, limits)
        if ij != ji:
            permutable = False
        pair_sets[(i, j)] = ij
    triple = product_set(sorted(pair_sets[(0, 1)]), Ns[2].elements, limits)
    all_nilp = all(is_nilpotent_tiny(N) for N in Ns)
    met = permutable and all_nilp and len(triple) == T.order
    pair_h = None
    bound = None
    h_g = None
    holds = None
    if met:
        hs = []
        for (i, j) in ((0, 1), (1, 2), (2, 0)):
            sub = TinyGroup(T.degree, sorted(pair_sets[(i, j)]),
                            Ns[i].gens + Ns[j].gens)
            hs.append(fitting_length_upper(sub, limits))
        pair_h = tuple(hs)
        bound = sum(hs) - 2
        h_g = fitting_length_upper(T, limits)
        holds = h_g <= bound
    return TriProductReport(
        orders=(T.order, Ns[0].order, Ns[1].order, Ns[2].order),
        triple_product_order=len(triple),
        pairwise_permutable=permutable,
        all_nilpotent=all_nilp,
        hypothesis_met=met,
        pair_h=pair_h,
        bound_value=bound,
        h_g=h_g,
        inequality_holds=holds,
    )
