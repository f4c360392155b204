"""Permutation groups: generators plus a lazily built stabilizer chain."""

from __future__ import annotations

import threading
from typing import Optional, Sequence

import numpy as np

from .chain import StabilizerChain, build_chain
from .errors import ContainmentError, DegreeMismatchError
from .perms import Permutation, _arange

_SPF: list[int] = []  # smallest-prime-factor sieve, grown on demand


def _smallest_prime_factors(limit: int) -> list[int]:
    global _SPF
    if len(_SPF) <= limit:
        size = max(limit + 1, 4097)
        spf = list(range(size))
        for p in range(2, int(size ** 0.5) + 1):
            if spf[p] == p:
                for q in range(p * p, size, p):
                    if spf[q] == q:
                        spf[q] = p
        _SPF = spf
    return _SPF


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer (small enough to sieve)."""
    if n < 1:
        raise ValueError("cannot factorize %d" % n)
    spf = _smallest_prime_factors(n)
    out: dict[int, int] = {}
    while n > 1:
        p = spf[n]
        out[p] = out.get(p, 0) + 1
        n //= p
    return out


class PermGroup:
    """A group of permutations of {0..degree-1}.

    Order, membership and prime data all come from the stabilizer
    chain, which is built on first use.  Instances are immutable once
    the chain exists; the lazy build is lock-protected, so groups can
    be shared between threads.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 known_order: Optional[int] = None,
                 _chain: Optional[StabilizerChain] = None):
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatchError(
                    "generator %s has degree %d, expected %d"
                    % (g, g.degree, degree)
                )
        self.degree = degree
        self.generators = tuple(generators)
        self._known_order = known_order
        self._chain = _chain
        self._factored: Optional[dict[int, int]] = None
        self._lock = threading.Lock()

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, ())

    @classmethod
    def from_arrays(cls, degree: int, arrays: Sequence[np.ndarray],
                    chain: Optional[StabilizerChain] = None) -> "PermGroup":
        gens = tuple(Permutation(a, _checked=True) for a in arrays)
        return cls(degree, gens, _chain=chain)

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    chain, _ = build_chain(
                        self.degree,
                        [g.images for g in self.generators],
                        target_order=self._known_order,
                    )
                    self._chain = chain
        return self._chain

    @property
    def order(self) -> int:
        return self.chain.order()

    @property
    def factored_order(self) -> dict[int, int]:
        if self._factored is None:
            factored: dict[int, int] = {}
            for lv in self.chain.levels:
                for p, e in factorize(len(lv.orbit)).items():
                    factored[p] = factored.get(p, 0) + e
            self._factored = factored
        return dict(self._factored)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(sorted(self.factored_order))

    @property
    def num_primes(self) -> int:
        return len(self.factored_order)

    def is_trivial(self) -> bool:
        return self.order == 1

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatchError(
                "element degree %d does not match group degree %d"
                % (g.degree, self.degree)
            )
        return self.chain.contains_array(g.images)

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    def subgroup(self, gens: Sequence[Permutation]) -> "PermGroup":
        """The subgroup generated by gens, which must all lie in this group."""
        for g in gens:
            if not self.contains(g):
                raise ContainmentError(
                    "generator %s is not an element of the group" % g
                )
        return PermGroup(self.degree, gens)

    def reduced(self) -> "PermGroup":
        """An equal group whose generator list carries no redundant entries.

        Rebuilds the chain with the already-known order as target, which
        makes this cheap relative to the first build.
        """
        arrays = [g.images for g in self.generators]
        chain, kept = build_chain(self.degree, arrays, target_order=self.order)
        gens = tuple(self.generators[i] for i in kept)
        return PermGroup(self.degree, gens, _chain=chain)

    def sample(self, rng) -> Permutation:
        """Uniform random element (rng is a random.Random).

        Walks the chain deepest level first, so the product runs
        stabilizer-part-then-coset-representative at every level.
        """
        indices = [rng.randrange(len(lv.orbit)) for lv in self.chain.levels]
        arr = _arange(self.degree)
        for lv, k in zip(reversed(self.chain.levels), reversed(indices)):
            arr = lv.trans[k][arr]
        return Permutation(arr.copy(), _checked=True)

    def __repr__(self) -> str:
        if self._chain is not None:
            return "PermGroup(degree=%d, order=%d, gens=%d)" % (
                self.degree, self.order, len(self.generators))
        return "PermGroup(degree=%d, gens=%d)" % (self.degree, len(self.generators))


def p_part(factored: dict[int, int], sigma) -> int:
    """The sigma-part of a factored order."""
    result = 1
    for p, e in factored.items():
        if p in sigma:
            result *= p ** e
    return result
