"""Deterministic stabilizer chains (Schreier-Sims).

The builder is fully deterministic: generators are processed in the
order given, orbits in BFS discovery order, and Schreier generators in
a fixed scan order, so identical input always yields an identical
chain.  Verification work is tracked with per-level watermarks, which
makes adding one generator to an already verified chain cheap; normal
closures lean on that heavily.

A chain is complete when every Schreier generator sifts to the
identity.  The product of orbit lengths of a partially verified chain
never exceeds the true group order, so when the caller supplies the
exact order up front (`target_order`) the builder may stop as soon as
the product reaches it.  That shortcut is only sound when the supplied
order is exact; callers that need to *measure* an order must not pass
one.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .errors import SylowSystemError
from .perms import _arange, invert_array


class _Level:
    __slots__ = ("point", "gens", "orbit", "pos", "trans", "trans_inv",
                 "proc", "vdone", "vscan")

    def __init__(self, point: int, degree: int):
        ident = _arange(degree)
        self.point = point
        self.gens: list[np.ndarray] = []
        self.orbit: list[int] = [point]
        self.pos: dict[int, int] = {point: 0}
        self.trans: list[np.ndarray] = [ident]
        self.trans_inv: list[np.ndarray] = [ident]
        # orbit positions already expanded against the first proc[i] gens
        self.proc: list[int] = [0]
        # Schreier pairs (i, j) with j < vdone[i] are verified
        self.vdone: list[int] = [0]
        self.vscan = 0


class StabilizerChain:
    """Base-and-strong-generating-set structure for one permutation group.

    Mutable while building; callers outside this module should treat a
    finished chain as read-only.
    """

    def __init__(self, degree: int, target_order: Optional[int] = None):
        self.degree = degree
        self.levels: list[_Level] = []
        self.target_order = target_order
        self.complete = True  # empty chain is the trivial group
        self._base = np.empty(0, dtype=np.intp)

    # -- queries ---------------------------------------------------------

    def order(self) -> int:
        result = 1
        for lv in self.levels:
            result *= len(lv.orbit)
        return result

    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def strong_generators(self) -> list[np.ndarray]:
        out: list[np.ndarray] = []
        seen: set[bytes] = set()
        for lv in self.levels:
            for g in lv.gens:
                key = g.tobytes()
                if key not in seen:
                    seen.add(key)
                    out.append(g)
        return out

    def sift(self, arr: np.ndarray, start: int = 0):
        """Reduce arr through the chain.

        Returns (None, len(levels)) when arr reduces to the identity,
        else (residue, level) where level is the first level the
        residue could not pass (== len(levels) if it fixes every base
        point without being the identity).
        """
        levels = self.levels
        nlev = len(levels)
        base = self._base
        idx = start
        # jump straight to the next base point the residue moves; levels
        # with a fixed base point contribute the identity coset rep
        while idx < nlev:
            tail = base[idx:]
            moved = np.nonzero(arr[tail] != tail)[0]
            if moved.size == 0:
                break
            idx += int(moved[0])
            lv = levels[idx]
            img = int(arr[lv.point])
            j = lv.pos.get(img)
            if j is None:
                return arr, idx
            arr = lv.trans_inv[j][arr]
            idx += 1
        if (arr == _arange(self.degree)).all():
            return None, nlev
        return arr, nlev

    def contains_array(self, arr: np.ndarray) -> bool:
        if not self.complete:
            raise RuntimeError("membership test on an unverified chain")
        residue, _ = self.sift(arr)
        return residue is None

    def transversal_element(self, level: int, index: int) -> np.ndarray:
        return self.levels[level].trans[index]

    # -- construction ----------------------------------------------------

    def add_generator(self, arr: np.ndarray, verify: bool = True) -> bool:
        """Extend the chain by one generator.

        Returns True when the generator was not already sifted to the
        identity.  With verify=False the chain is left unverified (a
        residue sifting to the identity still proves membership, so a
        True return may occasionally be a redundant insertion); callers
        batching many insertions should call verify() once at the end.
        """
        residue, stuck = self.sift(arr)
        if residue is None:
            return False
        self.complete = False
        self._insert(residue, 0, stuck)
        if verify:
            self._verify()
        return True

    def verify(self) -> None:
        """Re-establish completeness after unverified insertions."""
        if not self.complete:
            self._verify()

    def extend(self, arrays: Iterable[np.ndarray]) -> list[int]:
        """Add several generators; returns indices of those that grew the group."""
        kept = []
        for i, arr in enumerate(arrays):
            if self.add_generator(arr):
                kept.append(i)
        return kept

    def _insert(self, arr: np.ndarray, lo: int, hi: int) -> None:
        # arr fixes the base points of all levels before hi and is new
        # at every level in lo..hi.
        if hi == len(self.levels):
            moved = int(np.flatnonzero(arr != _arange(self.degree))[0])
            self.levels.append(_Level(moved, self.degree))
            self._base = np.array([lv.point for lv in self.levels], dtype=np.intp)
        arr.setflags(write=False)
        for k in range(lo, hi + 1):
            lv = self.levels[k]
            lv.gens.append(arr)
            lv.vscan = 0
            self._extend_orbit(lv)

    def _extend_orbit(self, lv: _Level) -> None:
        orbit, pos, trans, trans_inv = lv.orbit, lv.pos, lv.trans, lv.trans_inv
        gens, proc = lv.gens, lv.proc
        i = 0
        while i < len(orbit):
            start = proc[i]
            ngens = len(gens)
            if start < ngens:
                pt = orbit[i]
                u = trans[i]
                for j in range(start, ngens):
                    g = gens[j]
                    img = int(g[pt])
                    if img not in pos:
                        pos[img] = len(orbit)
                        orbit.append(img)
                        w = g[u]
                        w.setflags(write=False)
                        trans.append(w)
                        wi = invert_array(w)
                        wi.setflags(write=False)
                        trans_inv.append(wi)
                        proc.append(0)
                        lv.vdone.append(0)
                proc[i] = ngens
            i += 1

    def _target_reached(self) -> bool:
        return self.target_order is not None and self.order() == self.target_order

    def _verify(self) -> None:
        if self._target_reached():
            self.complete = True
            return
        ident = _arange(self.degree)
        levels = self.levels
        i = len(levels) - 1
        while i >= 0:
            lv = levels[i]
            # find the next unverified Schreier pair at this level
            while lv.vscan < len(lv.orbit) and lv.vdone[lv.vscan] >= len(lv.gens):
                lv.vscan += 1
            if lv.vscan >= len(lv.orbit):
                i -= 1
                continue
            pidx = lv.vscan
            gidx = lv.vdone[pidx]
            u = lv.trans[pidx]
            s = lv.gens[gidx]
            w = s[u]
            img = int(w[lv.point])
            schreier = lv.trans_inv[lv.pos[img]][w]
            if (schreier == ident).all():
                lv.vdone[pidx] = gidx + 1
                continue
            residue, stuck = self.sift(schreier, i + 1)
            if residue is None:
                lv.vdone[pidx] = gidx + 1
                continue
            self._insert(residue, i + 1, stuck)
            if self._target_reached():
                self.complete = True
                return
            i = stuck
        self.complete = True


def build_chain(degree: int, arrays: Iterable[np.ndarray],
                target_order: Optional[int] = None,
                batch: bool = False) -> tuple[StabilizerChain, list[int]]:
    """Build a verified chain; also reports which inputs mattered.

    The second return value lists the indices of the generators that
    were not sifted to the identity, in processing order; the others
    are certainly redundant.  With batch=True verification runs once at
    the end instead of after every insertion, which is faster for long
    generator lists but may leave a few redundant indices in the kept
    list.
    """
    chain = StabilizerChain(degree, target_order)
    if batch:
        kept = []
        for i, arr in enumerate(arrays):
            if chain.add_generator(arr, verify=False):
                kept.append(i)
        chain.verify()
    else:
        kept = chain.extend(arrays)
    if target_order is not None and chain.order() != target_order:
        raise SylowSystemError(
            "expected order %d but generators produce order %d"
            % (target_order, chain.order())
        )
    return chain, kept
