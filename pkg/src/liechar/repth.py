"""Weight multiplicities, Weyl dimensions, orbits and tensor decompositions.

The engine lives in :class:`Algebra`, which precomputes the root data of one
Cartan matrix and memoizes the expensive results (dimensions, multiplicity
tables, tensor decompositions).  Tensor products follow the Klimyk rule:
iterate over every weight of the smaller factor, dominant-reflect the
ρ-shifted sum, drop terms fixed by a wall, and accumulate signs.  Weight
multiplicities come from the Freudenthal recursion, evaluated over exact
rationals and asserted integral.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import factorial
from typing import Iterator

from .errors import BudgetError
from .rootsys import CartanMatrix, Weight, build_cartan

__all__ = [
    "Algebra",
    "WeightMultiplicityTable",
    "Decomposition",
    "DEFAULT_TENSOR_BUDGET",
]

DEFAULT_TENSOR_BUDGET = 20_000_000


class WeightMultiplicityTable:
    """Dominant weight -> multiplicity map for one irreducible module."""

    __slots__ = ("highest", "entries")

    def __init__(self, highest: Weight, entries: dict):
        self.highest = highest
        self.entries = dict(entries)

    def __getitem__(self, weight):
        return self.entries[tuple(weight)]

    def get(self, weight, default=0):
        return self.entries.get(tuple(weight), default)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.items())

    def items(self):
        return sorted(self.entries.items())

    def to_json_dict(self) -> dict:
        return {
            "highest": list(self.highest),
            "entries": [{"labels": list(w), "mult": str(m)}
                        for w, m in self.items()],
        }


class Decomposition:
    """Irreducible constituents of a tensor product with multiplicities."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict):
        self.entries = dict(entries)

    def __getitem__(self, weight):
        return self.entries[tuple(weight)]

    def get(self, weight, default=0):
        return self.entries.get(tuple(weight), default)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.items())

    def __eq__(self, other):
        return isinstance(other, Decomposition) and self.entries == other.entries

    def items(self):
        return sorted(self.entries.items())

    def to_json_dict(self) -> list:
        return [{"labels": list(w), "mult": str(m)} for w, m in self.items()]


def _component_weyl_order(nodes, entries) -> int:
    """|W| of one connected sub-diagram, classified by shape."""
    n = len(nodes)
    index = {node: i for i, node in enumerate(nodes)}
    adj = [[] for _ in nodes]
    marks = []
    for a in nodes:
        for b in nodes:
            if a < b and entries[a][b] != 0:
                marks.append(entries[a][b] * entries[b][a])
                adj[index[a]].append(index[b])
                adj[index[b]].append(index[a])
    if any(m == 3 for m in marks):
        return 12  # G2
    if any(m == 2 for m in marks):
        if n == 2:
            return 8
        double = next(i for i, m in enumerate(marks) if m == 2)
        a, b = [(x, y) for x in nodes for y in nodes
                if x < y and entries[x][y] != 0][double]
        if len(adj[index[a]]) == 2 and len(adj[index[b]]) == 2:
            return 1152  # F4
        return 2 ** n * factorial(n)  # B/C
    degrees = [len(x) for x in adj]
    if not degrees or max(degrees) <= 2:
        return factorial(n + 1)  # A_n
    branch = degrees.index(3)
    arms = []
    for first in adj[branch]:
        length = 1
        prev, cur = branch, first
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return 2 ** (n - 1) * factorial(n)  # D_n
    if arms == [1, 2, 2]:
        return 51840  # E6
    if arms == [1, 2, 3]:
        return 2903040  # E7
    if arms == [1, 2, 4]:
        return 696729600  # E8
    raise ValueError("sub-diagram is not of finite type")


class Algebra:
    """Precomputed root data plus the weight-combinatorics operations."""

    def __init__(self, cartan, tensor_budget: int = DEFAULT_TENSOR_BUDGET):
        if not isinstance(cartan, CartanMatrix):
            cartan = build_cartan(cartan)
        self.cartan = cartan
        self.rank = cartan.rank
        self.tensor_budget = int(tensor_budget)
        if self.tensor_budget <= 0:
            raise ValueError("tensor budget must be positive")
        rows = cartan.entries
        self._rows = rows
        # per node: (neighbor, -A[i][j]) pairs for the reflection update
        self._nbrs = tuple(
            tuple((j, -rows[i][j]) for j in range(self.rank)
                  if j != i and rows[i][j] != 0)
            for i in range(self.rank))
        self._ainv = cartan.inverse
        self._d = cartan.symmetrizer
        self.roots = cartan.positive_roots
        # (ρ, α) = sum_j c_j d_j and (α, α) per positive root
        self._root_rho_ip = tuple(
            sum(c * d for c, d in zip(root.coeffs, self._d))
            for root in self.roots)
        self._root_norm = tuple(
            sum(l * c * d for l, c, d in zip(root.labels, root.coeffs, self._d))
            for root in self.roots)
        # metric on weights: G[j][k] = (λ_j, λ_k) = d_j * (A^-1)_kj
        self._metric = tuple(
            tuple(self._d[j] * self._ainv.entries[k][j] for k in range(self.rank))
            for j in range(self.rank))
        self.rho = Weight((1,) * self.rank)
        self._dims: dict = {}
        self._freudenthal: dict = {}
        self._tensor: dict = {}
        self._lock = threading.RLock()

    # -- basics ---------------------------------------------------------

    def fundamental(self, index: int) -> Weight:
        """The fundamental weight λ_index (1-based)."""
        if not 1 <= index <= self.rank:
            raise ValueError(f"index {index} out of range 1..{self.rank}")
        return Weight(1 if k == index - 1 else 0 for k in range(self.rank))

    def _check_weight(self, w) -> tuple:
        t = tuple(int(x) for x in w)
        if len(t) != self.rank:
            raise ValueError(f"weight {t} does not have rank {self.rank}")
        return t

    def _check_dominant(self, w) -> tuple:
        t = self._check_weight(w)
        if any(x < 0 for x in t):
            raise ValueError(f"weight {t} is not dominant")
        return t

    def weight_form(self, x, y) -> Fraction:
        """Weyl-invariant symmetric form on label vectors (long roots norm 2)."""
        x = self._check_weight(x)
        y = self._check_weight(y)
        total = Fraction(0)
        for j, xj in enumerate(x):
            if xj:
                row = self._metric[j]
                total += xj * sum(yk * row[k] for k, yk in enumerate(y) if yk)
        return total

    def _weight_root_ip(self, w, root_index: int) -> Fraction:
        coeffs = self.roots[root_index].coeffs
        return sum(wj * c * d
                   for wj, c, d in zip(w, coeffs, self._d) if wj and c)

    def root_coords(self, w) -> tuple:
        """Coordinates of a label vector in the simple-root basis."""
        w = self._check_weight(w)
        cols = self._ainv.entries
        return tuple(
            sum(w[k] * cols[k][m] for k in range(self.rank) if w[k])
            for m in range(self.rank))

    def dominance_gap(self, high, low):
        """Root coords of ``high - low``; all >= 0 and integral iff low <= high."""
        high = self._check_weight(high)
        low = self._check_weight(low)
        diff = tuple(a - b for a, b in zip(high, low))
        return self.root_coords(diff)

    def is_dominance_below(self, low, high) -> bool:
        gap = self.dominance_gap(high, low)
        return all(x >= 0 and x.denominator == 1 for x in gap)

    # -- reflections ------------------------------------------------------

    def dominant_reflect(self, w):
        """Reflect to the dominant chamber.

        Returns ``(dominant, sign, singular)`` where sign is (-1)^reflections
        and singular is True when the stabilizer is nontrivial (a zero label
        in the dominant representative; for ρ-shifted inputs this is exactly
        the wall-cancellation test).
        """
        v = list(self._check_weight(w))
        nbrs = self._nbrs
        sign = 1
        i = 0
        n = self.rank
        while i < n:
            x = v[i]
            if x < 0:
                v[i] = -x
                for j, c in nbrs[i]:
                    v[j] += c * x
                sign = -sign
                i = 0
            else:
                i += 1
        return Weight(v), sign, 0 in v

    def _reflect_no_walls(self, v):
        """Klimyk inner loop: dominant form and sign, or None when singular."""
        nbrs = self._nbrs
        sign = 1
        i = 0
        n = self.rank
        while i < n:
            x = v[i]
            if x == 0:
                return None
            if x < 0:
                v[i] = -x
                for j, c in nbrs[i]:
                    v[j] += c * x
                sign = -sign
                i = 0
            else:
                i += 1
        return tuple(v), sign

    def _dominant_of(self, v):
        v = list(v)
        nbrs = self._nbrs
        i = 0
        n = self.rank
        while i < n:
            x = v[i]
            if x < 0:
                v[i] = -x
                for j, c in nbrs[i]:
                    v[j] += c * x
                i = 0
            else:
                i += 1
        return tuple(v)

    def weyl_orbit(self, w) -> Iterator[tuple]:
        """All distinct images of a dominant weight under the Weyl group.

        Descends from the dominant representative by flipping positive labels;
        the visited set keyed on the label vector makes each element appear
        exactly once, in a deterministic order.
        """
        start = tuple(self._check_dominant(w))
        nbrs = self._nbrs
        n = self.rank
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            yield v
            for i in range(n):
                x = v[i]
                if x > 0:
                    u = list(v)
                    u[i] = -x
                    for j, c in nbrs[i]:
                        u[j] += c * x
                    t = tuple(u)
                    if t not in seen:
                        seen.add(t)
                        stack.append(t)

    # -- dimensions and orbit sizes ----------------------------------------

    def weyl_dim(self, w) -> int:
        """Dimension of the irreducible module with highest weight ``w``."""
        w = self._check_dominant(w)
        cached = self._dims.get(w)
        if cached is not None:
            return cached
        result = Fraction(1)
        for idx in range(len(self.roots)):
            rho_part = self._root_rho_ip[idx]
            result *= (self._weight_root_ip(w, idx) + rho_part) / rho_part
        if result.denominator != 1:
            raise AssertionError(f"non-integral dimension for {w}")
        value = int(result)
        with self._lock:
            self._dims[w] = value
        return value

    def weyl_order(self) -> int:
        return self._weyl_order_of(range(self.rank))

    def _weyl_order_of(self, nodes) -> int:
        nodes = sorted(nodes)
        remaining = set(nodes)
        order = 1
        while remaining:
            comp = []
            stack = [min(remaining)]
            remaining.discard(stack[0])
            while stack:
                a = stack.pop()
                comp.append(a)
                for b in list(remaining):
                    if self._rows[a][b] != 0:
                        remaining.discard(b)
                        stack.append(b)
            order *= _component_weyl_order(sorted(comp), self._rows)
        return order

    def orbit_size(self, w) -> int:
        """|W| / |Stab(w)| via the parabolic sub-diagram of zero labels."""
        w = self._check_dominant(w)
        zero_nodes = [i for i, x in enumerate(w) if x == 0]
        total = self.weyl_order()
        stab = self._weyl_order_of(zero_nodes)
        if total % stab:
            raise AssertionError("stabilizer order does not divide |W|")
        return total // stab

    # -- Freudenthal multiplicities ----------------------------------------

    def freudenthal(self, highest) -> WeightMultiplicityTable:
        """Multiplicities of all dominant weights of one irreducible module."""
        lam = self._check_dominant(highest)
        cached = self._freudenthal.get(lam)
        if cached is not None:
            return cached
        n = self.rank
        root_list = self.roots
        # dominant weights of the module: BFS downward by positive roots,
        # tracking the root coords of (λ - μ) with integer arithmetic
        gaps = {lam: (0,) * n}
        frontier = [lam]
        while frontier:
            fresh = []
            for w in frontier:
                gap = gaps[w]
                for root in root_list:
                    cand = tuple(a - b for a, b in zip(w, root.labels))
                    if any(x < 0 for x in cand) or cand in gaps:
                        continue
                    gaps[cand] = tuple(a + b for a, b in zip(gap, root.coeffs))
                    fresh.append(cand)
            frontier = fresh
        order = sorted(gaps, key=lambda w: (sum(gaps[w]), w))
        mults = {order[0]: 1}
        lam_norm = self._shifted_norm(lam)
        for mu in order[1:]:
            gap = gaps[mu]
            acc = Fraction(0)
            for idx, root in enumerate(root_list):
                base_ip = self._weight_root_ip(mu, idx)
                step = self._root_norm[idx]
                coeffs = root.coeffs
                labels = root.labels
                k = 1
                while all(g >= k * c for g, c in zip(gap, coeffs)):
                    v = tuple(a + k * b for a, b in zip(mu, labels))
                    m_v = mults.get(v if all(x >= 0 for x in v)
                                    else self._dominant_of(v), 0)
                    if m_v == 0:
                        break  # weight strings are unbroken intervals
                    acc += (base_ip + k * step) * m_v
                    k += 1
            denom = lam_norm - self._shifted_norm(mu)
            value = 2 * acc / denom
            if value.denominator != 1 or value <= 0:
                raise AssertionError(f"bad Freudenthal multiplicity at {mu}")
            mults[mu] = int(value)
        table = WeightMultiplicityTable(Weight(lam), mults)
        with self._lock:
            self._freudenthal[lam] = table
        return table

    def _shifted_norm(self, w) -> Fraction:
        shifted = tuple(x + 1 for x in w)
        total = Fraction(0)
        for j, xj in enumerate(shifted):
            row = self._metric[j]
            total += xj * sum(yk * row[k] for k, yk in enumerate(shifted))
        return total

    # -- tensor decomposition ----------------------------------------------

    def tensor_decompose(self, left, right, budget: int | None = None) -> Decomposition:
        """Clebsch-Gordan series of V_left ⊗ V_right (Klimyk rule).

        Iterates over the full weight system of the smaller factor; raises
        :class:`BudgetError` when that factor's dimension exceeds the budget
        (default ``self.tensor_budget``).
        """
        lam = self._check_dominant(left)
        nu = self._check_dominant(right)
        key = (lam, nu) if lam <= nu else (nu, lam)
        cached = self._tensor.get(key)
        if cached is not None:
            return cached
        if budget is None:
            budget = self.tensor_budget
        dim_l = self.weyl_dim(lam)
        dim_r = self.weyl_dim(nu)
        big, small = (lam, nu) if dim_l >= dim_r else (nu, lam)
        small_dim = min(dim_l, dim_r)
        if small_dim > budget:
            raise BudgetError(
                f"tensor product V{lam} (dim {dim_l}) x V{nu} (dim {dim_r}): "
                f"smaller factor has dimension {small_dim} exceeding the "
                f"budget {budget}",
                pair=(Weight(lam), Weight(nu)), dim=small_dim, budget=budget)
        shifted = tuple(x + 1 for x in big)
        n = self.rank
        table = self.freudenthal(small)
        acc: dict = {}
        reflect = self._reflect_no_walls
        for w, mult in table.entries.items():
            for u in self.weyl_orbit(w):
                res = reflect([shifted[i] + u[i] for i in range(n)])
                if res is None:
                    continue
                dom, sign = res
                key_w = tuple(x - 1 for x in dom)
                val = acc.get(key_w, 0) + sign * mult
                if val:
                    acc[key_w] = val
                elif key_w in acc:
                    del acc[key_w]
        if any(v < 0 for v in acc.values()):
            raise AssertionError("negative multiplicity in tensor decomposition")
        top = tuple(a + b for a, b in zip(lam, nu))
        if acc.get(top) != 1:
            raise AssertionError("highest component must appear exactly once")
        result = Decomposition({Weight(w): m for w, m in acc.items()})
        with self._lock:
            self._tensor[key] = result
        return result
