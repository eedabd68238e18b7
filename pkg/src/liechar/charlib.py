"""Irreducible characters as polynomials in the fundamental characters.

``character_poly`` peels one fundamental weight at a time: with i chosen so
that V_{λ_i} is the cheapest factor present in m and ν = m - e_i,

    χ_m = z_i · χ_ν  -  sum over the other constituents of V_{λ_i} ⊗ V_ν,

all strictly lower weights being resolved through the cache.  Computed
characters are validated (unit leading coefficient, every monomial weight
below m in dominance order) and optionally persisted, one fixture-grammar
file per weight.  The eigen-equation and the dimension identity are kept as
independent verification layers.
"""

from __future__ import annotations

import os
import sys
import threading
from dataclasses import dataclass
from pathlib import Path

from .csop import Delta1Operator, epsilon
from .repth import Algebra
from .rootsys import Weight
from .zpoly import (FixtureRecord, ZPolynomial, format_fixture_record,
                    read_fixture_file)

__all__ = [
    "CharacterCache",
    "EigenReport",
    "DimReport",
    "FixtureDiff",
    "verify_eigen",
    "dim_identity",
    "load_fixtures",
    "compare_fixture",
    "CACHE_ENV_VAR",
]

CACHE_ENV_VAR = "LIECHAR_CACHE"


class CharacterCache:
    """Memoized (and optionally disk-backed) store of character polynomials.

    Inserts are serialized and concurrent requests for the same weight
    coalesce, so each character is computed at most once per cache.
    """

    def __init__(self, algebra: Algebra, cache_dir=None):
        self.algebra = algebra
        self.rank = algebra.rank
        self._mem: dict = {}
        self._inflight: dict = {}
        self._lock = threading.Lock()
        self.cache_dir = Path(cache_dir) if cache_dir else None
        one = ZPolynomial.const(self.rank, 1)
        self._mem[(0,) * self.rank] = one
        for i in range(1, self.rank + 1):
            self._mem[tuple(algebra.fundamental(i))] = \
                ZPolynomial.variable(self.rank, i)

    # -- public API --------------------------------------------------------

    def character_poly(self, m) -> ZPolynomial:
        m = tuple(self.algebra._check_dominant(m))
        # dominance chains can nest a few hundred frames on E8
        if sys.getrecursionlimit() < 10000:
            sys.setrecursionlimit(10000)
        return self._get(m)

    def cached_weights(self):
        with self._lock:
            return sorted(self._mem)

    def seed(self, m, poly: ZPolynomial, validate: bool = True):
        """Install a known character (e.g. a golden record whose own tensor
        route is over budget) so recursions can resolve through it."""
        m = tuple(self.algebra._check_dominant(m))
        if validate:
            self._validate(m, poly)
            report = dim_identity(self.algebra, m, poly)
            if not report.ok:
                raise ValueError(
                    f"seed for {m} fails the dimension identity: "
                    f"{report.value} != {report.expected}")
        with self._lock:
            self._mem[m] = poly

    def verify_eigen(self, m, operator: Delta1Operator) -> "EigenReport":
        return verify_eigen(self.algebra, m, self.character_poly(m), operator)

    def dim_identity(self, m) -> "DimReport":
        return dim_identity(self.algebra, m, self.character_poly(m))

    # -- internals ----------------------------------------------------------

    def _get(self, m: tuple) -> ZPolynomial:
        while True:
            with self._lock:
                hit = self._mem.get(m)
                if hit is not None:
                    return hit
                event = self._inflight.get(m)
                if event is None:
                    event = threading.Event()
                    self._inflight[m] = event
                    break
            event.wait()
        try:
            poly = self._load_from_disk(m)
            if poly is None:
                poly = self._expand(m)
                self._store_to_disk(m, poly)
            with self._lock:
                self._mem[m] = poly
            return poly
        finally:
            with self._lock:
                del self._inflight[m]
            event.set()

    def _split_index(self, m: tuple) -> int:
        alg = self.algebra
        candidates = [i for i, x in enumerate(m) if x > 0]
        return min(candidates,
                   key=lambda i: (alg.weyl_dim(alg.fundamental(i + 1)), i)) + 1

    def _expand(self, m: tuple, split_index: int | None = None) -> ZPolynomial:
        i = self._split_index(m) if split_index is None else split_index
        if not m[i - 1] > 0:
            raise ValueError(f"label {i} of {m} is not positive")
        nu = tuple(x - (1 if j == i - 1 else 0) for j, x in enumerate(m))
        decomposition = self.algebra.tensor_decompose(self.algebra.fundamental(i), nu)
        poly = ZPolynomial.variable(self.rank, i) * self._get(nu)
        for mu, mult in decomposition.items():
            mu = tuple(mu)
            if mu != m:
                poly = poly - mult * self._get(mu)
        self._validate(m, poly)
        return poly

    def _validate(self, m: tuple, poly: ZPolynomial):
        if poly.coefficient(m) != 1:
            raise AssertionError(f"character of {m} lacks a unit leading term")
        alg = self.algebra
        for exps in poly.terms:
            # the weight of z^e is sum_i e_i λ_i, i.e. the label vector e
            if exps == m:
                continue
            gap = alg.dominance_gap(m, exps)
            if any(x < 0 or x.denominator != 1 for x in gap):
                raise AssertionError(
                    f"monomial {exps} of character {m} is not below it "
                    "in dominance order")

    # -- persistence ----------------------------------------------------------

    def _path_for(self, m: tuple) -> Path | None:
        if self.cache_dir is None:
            return None
        name = "-".join(str(x) for x in m) + ".chi"
        return self.cache_dir / self.algebra.cartan.key() / name

    def _load_from_disk(self, m: tuple) -> ZPolynomial | None:
        path = self._path_for(m)
        if path is None or not path.is_file():
            return None
        try:
            records = read_fixture_file(path, self.rank)
            if len(records) != 1:
                return None
            record = records[0]
            if record.kind != "chi" or tuple(record.index) != m:
                return None
            self._validate(m, record.poly)
            report = dim_identity(self.algebra, m, record.poly)
            if not report.ok:
                return None
            return record.poly
        except Exception:
            # corrupt cache entries are ignored and recomputed, never trusted
            return None

    def _store_to_disk(self, m: tuple, poly: ZPolynomial):
        path = self._path_for(m)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        text = format_fixture_record(FixtureRecord("chi", m, poly))
        path.write_text(text + "\n", encoding="utf-8")


@dataclass
class EigenReport:
    weight: Weight
    expected: int
    ok: bool
    residual: ZPolynomial

    def __bool__(self):
        return self.ok


@dataclass
class DimReport:
    weight: Weight
    value: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.value == self.expected

    def __bool__(self):
        return self.ok


@dataclass
class FixtureDiff:
    weight: Weight
    missing: dict
    extra: dict
    changed: dict

    @property
    def ok(self) -> bool:
        return not (self.missing or self.extra or self.changed)

    def __bool__(self):
        return self.ok


def verify_eigen(algebra: Algebra, m, chi: ZPolynomial,
                 operator: Delta1Operator) -> EigenReport:
    """Check that the operator multiplies the character by eps_m(1)."""
    m = algebra._check_dominant(m)
    expected = epsilon(algebra, m, 1)
    if expected.denominator != 1:
        raise AssertionError("eigenvalue is not integral")
    expected = int(expected)
    residual = operator.apply(chi) - expected * chi
    return EigenReport(Weight(m), expected, residual.is_zero, residual)


def dim_identity(algebra: Algebra, m, chi: ZPolynomial) -> DimReport:
    """Evaluate the character at the fundamental dimensions."""
    m = algebra._check_dominant(m)
    point = [algebra.weyl_dim(algebra.fundamental(i))
             for i in range(1, algebra.rank + 1)]
    return DimReport(Weight(m), chi.evaluate(point), algebra.weyl_dim(m))


def load_fixtures(path, rank: int) -> dict:
    """Character records of a fixture file, keyed by weight."""
    out = {}
    for record in read_fixture_file(path, rank):
        if record.kind == "chi":
            out[Weight(record.index)] = record.poly
    return out


def compare_fixture(m, computed: ZPolynomial, expected: ZPolynomial) -> FixtureDiff:
    """Exact term-map comparison; reports the symmetric difference."""
    got = computed.terms
    want = expected.terms
    missing = {e: c for e, c in want.items() if e not in got}
    extra = {e: c for e, c in got.items() if e not in want}
    changed = {e: (got[e], want[e])
               for e in got.keys() & want.keys() if got[e] != want[e]}
    return FixtureDiff(Weight(m), missing, extra, changed)


def default_cache_dir() -> Path | None:
    value = os.environ.get(CACHE_ENV_VAR)
    return Path(value) if value else None
