"""Root data for split reductive groups and the combinatorics of their coweight lattice.

A datum fixes a concrete lattice Λ = Z^n together with the simple coroots
(vectors in Λ) and simple roots (vectors in the dual lattice).  Everything
downstream — the dual-group representation ring, the Hecke algebra, the
orbit combinatorics — is parameterized by one of these objects.

Weyl group elements are handled as integer matrices acting on Λ, generated by
breadth-first closure from the simple reflections; the BFS depth is the
Coxeter length.  All arithmetic is exact: integers, Fractions, and the
{numerators, denominator ∈ {1,2}} representation for half-integral vectors
such as ρ̌.  Instances are immutable after construction and safe for
concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product as iter_product
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

Vector = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]

_WEYL_ORDER_CAP = 1_000_000


class HalfWeight(NamedTuple):
    """An element of (Λ or Λ̌) ⊗ ½Z: integer numerators over denominator 1 or 2."""

    numerators: Tuple[int, ...]
    denominator: int

    @classmethod
    def half_of(cls, doubled: Sequence[int]) -> "HalfWeight":
        """The vector (doubled)/2, reduced to denominator 1 when possible."""
        doubled = tuple(int(x) for x in doubled)
        if all(x % 2 == 0 for x in doubled):
            return cls(tuple(x // 2 for x in doubled), 1)
        return cls(doubled, 2)

    def fractions(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(n, self.denominator) for n in self.numerators)


class DomRep(NamedTuple):
    """Result of reducing a lattice vector into the dominant Weyl chamber."""

    coweight: Tuple
    word: Tuple[int, ...]
    sign: int


def _dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise ValueError("dimension mismatch: %d vs %d" % (len(a), len(b)))
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def _mat_vec(m: Matrix, v: Sequence) -> Tuple:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _row_reduce(rows: List[List[Fraction]]) -> List[List[Fraction]]:
    rows = [list(r) for r in rows]
    nrows, ncols = len(rows), len(rows[0]) if rows else 0
    pivot_row = 0
    for col in range(ncols):
        pick = next((r for r in range(pivot_row, nrows) if rows[r][col] != 0), None)
        if pick is None:
            continue
        rows[pivot_row], rows[pick] = rows[pick], rows[pivot_row]
        inv = Fraction(1) / rows[pivot_row][col]
        rows[pivot_row] = [x * inv for x in rows[pivot_row]]
        for r in range(nrows):
            if r != pivot_row and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == nrows:
            break
    return rows


def _matrix_rank(vectors: Sequence[Sequence[int]]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    reduced = _row_reduce(rows)
    return sum(1 for row in reduced if any(row))


def _det(matrix: List[List[Fraction]]) -> Fraction:
    n = len(matrix)
    m = [list(row) for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pick = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pick is None:
            return Fraction(0)
        if pick != col:
            m[col], m[pick] = m[pick], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] * inv
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


@dataclass(frozen=True)
class RootDatum:
    """A finite-type root datum on a concrete lattice Λ = Z^lattice_rank.

    cartan_matrix[i][j] = ⟨α_j, α̌_i⟩, so rows index the simple roots and
    columns the simple coroots.  Construct through build_root_datum, which
    validates finite type and pairing consistency.
    """

    lattice_rank: int
    simple_coroots: Tuple[Vector, ...]
    simple_roots: Tuple[Vector, ...]
    cartan_matrix: Matrix
    preset_name: Optional[str] = None

    @property
    def rank(self) -> int:
        return len(self.simple_coroots)

    # -- basic lattice operations -----------------------------------------

    def coweight(self, x) -> Tuple:
        """Normalize an int (rank-1 convenience) or a sequence to a coweight tuple."""
        if isinstance(x, int):
            if self.lattice_rank != 1:
                raise ValueError("scalar coweight only allowed for lattice rank 1")
            return (x,)
        t = tuple(x)
        if len(t) != self.lattice_rank:
            raise ValueError(
                "coweight %r has length %d, expected %d" % (x, len(t), self.lattice_rank)
            )
        return t

    def pairing(self, lam: Sequence, x) -> Fraction:
        """The canonical pairing of a coweight with a dual vector or HalfWeight."""
        xs = x.fractions() if isinstance(x, HalfWeight) else x
        return _dot(lam, xs)

    def pairing_2rho(self, lam: Sequence) -> int:
        """⟨λ, 2ρ̌⟩, always an integer."""
        val = _dot(lam, self.two_rho_check)
        assert val.denominator == 1
        return int(val)

    def reflect(self, i: int, lam: Sequence) -> Tuple:
        """Simple reflection s_i(λ) = λ − ⟨λ, α̌_i⟩ α_i on the coweight side."""
        c = _dot(lam, self.simple_roots[i])
        out = tuple(x - c * a for x, a in zip(lam, self.simple_coroots[i]))
        if all(Fraction(x).denominator == 1 for x in out):
            return tuple(int(x) for x in out)
        return out

    def dual_reflect(self, i: int, x: Sequence) -> Tuple:
        """Simple reflection on the dual lattice: x − ⟨α_i, x⟩ α̌_i."""
        c = _dot(self.simple_coroots[i], x)
        out = tuple(y - c * a for y, a in zip(x, self.simple_roots[i]))
        if all(Fraction(y).denominator == 1 for y in out):
            return tuple(int(y) for y in out)
        return out

    def is_dominant(self, lam: Sequence) -> bool:
        return all(_dot(lam, root) >= 0 for root in self.simple_roots)

    def dominant_representative(self, lam: Sequence) -> DomRep:
        """The dominant Weyl-orbit representative, with a word mapping λ to it.

        The word lists the simple reflections in application order: applying
        s_{word[0]}, then s_{word[1]}, ... to λ yields the returned coweight.
        The sign is (−1)^{#word}, which is the sign of the reducing Weyl
        element (word length has well-defined parity).
        """
        cur = tuple(lam)
        word: List[int] = []
        while True:
            neg = next(
                (i for i, root in enumerate(self.simple_roots) if _dot(cur, root) < 0), None
            )
            if neg is None:
                return DomRep(cur, tuple(word), -1 if len(word) % 2 else 1)
            cur = self.reflect(neg, cur)
            word.append(neg)

    def is_singular(self, lam: Sequence) -> bool:
        """True when some Weyl reflection fixes λ (a pairing vanishes on the orbit)."""
        dom = self.dominant_representative(lam).coweight
        return any(_dot(dom, root) == 0 for root in self.simple_roots)

    def apply_w0(self, lam: Sequence) -> Tuple:
        return _mat_vec(self.w0_matrix, tuple(lam))

    def coroot_coordinates(self, vec: Sequence) -> Optional[Tuple[Fraction, ...]]:
        """Coordinates of vec in the simple coroots, or None if vec is outside their span."""
        cols = self.simple_coroots
        rows = [
            [Fraction(cols[j][r]) for j in range(len(cols))] + [Fraction(vec[r])]
            for r in range(self.lattice_rank)
        ]
        reduced = _row_reduce(rows)
        solution: List[Fraction] = [Fraction(0)] * len(cols)
        for row in reduced:
            lead = next((j for j in range(len(cols)) if row[j] != 0), None)
            if lead is None:
                if row[-1] != 0:
                    return None
                continue
            solution[lead] = row[-1]
        # verify (guards against underdetermined corner cases)
        for r in range(self.lattice_rank):
            if sum(solution[j] * cols[j][r] for j in range(len(cols))) != Fraction(vec[r]):
                return None
        return tuple(solution)

    def dominance_leq(self, mu: Sequence, lam: Sequence) -> bool:
        """μ ≤ λ in the dominance order: λ − μ is a Z≥0-combination of simple coroots.

        The simple coroots of the group are the positive simple roots of the
        dual group, so this is also the dual group's weight dominance order.
        """
        diff = tuple(l - m for l, m in zip(lam, mu))
        coords = self.coroot_coordinates(diff)
        if coords is None:
            return False
        return all(c.denominator == 1 and c >= 0 for c in coords)

    # -- derived structure (computed lazily, cached on the instance) -------

    @cached_property
    def positive_coroots(self) -> Tuple[Tuple[Vector, Vector], ...]:
        """Positive coroots of the group (= positive roots of the dual group).

        Each entry is (vector in Λ, coordinates in the simple coroots),
        sorted by height and then lexicographically.
        """
        seen: Dict[Vector, Vector] = {}
        frontier = [
            (tuple(c), tuple(1 if k == i else 0 for k in range(self.rank)))
            for i, c in enumerate(self.simple_coroots)
        ]
        for v, coords in frontier:
            seen[v] = coords
        while frontier:
            nxt = []
            for v, coords in frontier:
                for i in range(self.rank):
                    c = _dot(v, self.simple_roots[i])
                    assert c.denominator == 1
                    w = self.reflect(i, v)
                    wc = tuple(
                        coords[k] - (int(c) if k == i else 0) for k in range(self.rank)
                    )
                    if w not in seen:
                        seen[w] = wc
                        nxt.append((w, wc))
            frontier = nxt
        positive = [(v, c) for v, c in seen.items() if all(x >= 0 for x in c)]
        positive.sort(key=lambda vc: (sum(vc[1]), vc[0]))
        return tuple(positive)

    @cached_property
    def positive_roots(self) -> Tuple[Vector, ...]:
        """Positive roots of the group, as vectors in the dual lattice."""
        seen: Dict[Vector, Vector] = {}
        frontier = [
            (tuple(r), tuple(1 if k == i else 0 for k in range(self.rank)))
            for i, r in enumerate(self.simple_roots)
        ]
        for v, coords in frontier:
            seen[v] = coords
        while frontier:
            nxt = []
            for v, coords in frontier:
                for i in range(self.rank):
                    c = _dot(self.simple_coroots[i], v)
                    assert c.denominator == 1
                    w = self.dual_reflect(i, v)
                    wc = tuple(
                        coords[k] - (int(c) if k == i else 0) for k in range(self.rank)
                    )
                    if w not in seen:
                        seen[w] = wc
                        nxt.append((w, wc))
            frontier = nxt
        positive = [(v, c) for v, c in seen.items() if all(x >= 0 for x in c)]
        positive.sort(key=lambda vc: (sum(vc[1]), vc[0]))
        return tuple(v for v, _ in positive)

    @cached_property
    def two_rho_check(self) -> Vector:
        """2ρ̌: the sum of the positive roots, an honest dual-lattice vector."""
        total = [0] * self.lattice_rank
        for root in self.positive_roots:
            for k, x in enumerate(root):
                total[k] += x
        return tuple(total)

    @cached_property
    def rho_check(self) -> HalfWeight:
        """ρ̌: half the sum of the positive roots."""
        return HalfWeight.half_of(self.two_rho_check)

    @cached_property
    def rho_dual(self) -> HalfWeight:
        """ρ of the dual group: half the sum of the positive coroots."""
        total = [0] * self.lattice_rank
        for v, _ in self.positive_coroots:
            for k, x in enumerate(v):
                total[k] += x
        return HalfWeight.half_of(total)

    @cached_property
    def rho_dual_fractions(self) -> Tuple[Fraction, ...]:
        return self.rho_dual.fractions()

    @cached_property
    def symmetrizer(self) -> Tuple[int, ...]:
        """Minimal positive integers d with d_i C_ij = d_j C_ji.

        These normalize the Weyl-invariant symmetric form on Λ⊗Q used by the
        Freudenthal recursion: (x, α_j) = d_j ⟨x, α̌_j⟩.
        """
        C = self.cartan_matrix
        r = self.rank
        d: List[Optional[Fraction]] = [None] * r
        for start in range(r):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(r):
                    if C[i][j] != 0 and i != j and d[j] is None:
                        # symmetry constraint d_i C_ij = d_j C_ji
                        d[j] = d[i] * Fraction(C[i][j], C[j][i])
                        stack.append(j)
        denoms = [x.denominator for x in d]  # type: ignore[union-attr]
        scale = 1
        for den in denoms:
            scale = scale * den // _gcd(scale, den)
        ints = [int(x * scale) for x in d]  # type: ignore[arg-type]
        g = 0
        for x in ints:
            g = _gcd(g, x)
        return tuple(x // g for x in ints)

    @cached_property
    def weyl_elements(self) -> Tuple[Tuple[Matrix, int], ...]:
        """All Weyl group elements as (matrix on Λ, Coxeter length)."""
        gens = []
        n = self.lattice_rank
        for i in range(self.rank):
            cols = []
            for c in range(n):
                e = tuple(1 if r == c else 0 for r in range(n))
                cols.append(self.reflect(i, e))
            gens.append(tuple(tuple(cols[c][r] for c in range(n)) for r in range(n)))
        ident = _identity(n)
        seen = {ident: 0}
        frontier = [ident]
        depth = 0
        while frontier:
            depth += 1
            nxt = []
            for m in frontier:
                for g in gens:
                    p = _mat_mul(g, m)
                    if p not in seen:
                        seen[p] = depth
                        nxt.append(p)
            frontier = nxt
            if len(seen) > _WEYL_ORDER_CAP:
                raise ValueError("Weyl group exceeds the supported size cap")
        return tuple(sorted(seen.items(), key=lambda kv: (kv[1], kv[0])))

    @cached_property
    def weyl_order(self) -> int:
        return len(self.weyl_elements)

    @cached_property
    def w0_matrix(self) -> Matrix:
        """The longest element, as a matrix on Λ."""
        elements = self.weyl_elements
        top = max(length for _, length in elements)
        longest = [m for m, length in elements if length == top]
        assert len(longest) == 1
        return longest[0]

    def weyl_orbit(self, lam: Sequence) -> Tuple[Tuple, ...]:
        """The Weyl orbit of a lattice vector, sorted."""
        start = tuple(lam)
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(self.rank):
                    w = self.reflect(i, v)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return tuple(sorted(seen))

    def dominant_box(self, pair_bound: int, coord_bound: Optional[int] = None):
        """Dominant coweights λ with ⟨λ, 2ρ̌⟩ ≤ pair_bound inside a coordinate box.

        For data with a central torus direction (GL-type presets) the pairing
        does not bound the center, so a coordinate box is always imposed;
        coord_bound defaults to pair_bound.
        """
        if coord_bound is None:
            coord_bound = pair_bound
        out = []
        for coords in iter_product(range(-coord_bound, coord_bound + 1), repeat=self.lattice_rank):
            if self.is_dominant(coords) and self.pairing_2rho(coords) <= pair_bound:
                out.append(coords)
        out.sort(key=lambda v: (self.pairing_2rho(v), v))
        return out

    def to_json(self) -> dict:
        return {
            "cartan": [list(row) for row in self.cartan_matrix],
            "coroots": [list(v) for v in self.simple_coroots],
            "roots": [list(v) for v in self.simple_roots],
        }


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


# Preset lattices.  Coordinates:
#   PGL2 — Λ = Z in the fundamental-coweight coordinate; dual group SL(2).
#   SL2  — Λ = Z = the coroot lattice; dual group PGL(2).
#   GL2  — Λ = Z^2 standard; self-dual.
#   SL3  — type A2, Λ = Z^2 in fundamental-coweight coordinates; dual group SL(3).
#   GL3  — Λ = Z^3 standard; self-dual.
#   Sp4  — type C2 on the dual side, Λ = Z^2 in fundamental-coweight
#          coordinates; dual group Sp(4).
#   G2   — Λ = Z^2 in fundamental-coweight coordinates; dual group G2.
PRESETS: Dict[str, dict] = {
    "PGL2": {"coroots": [[2]], "roots": [[1]], "cartan": [[2]]},
    "SL2": {"coroots": [[1]], "roots": [[2]], "cartan": [[2]]},
    "GL2": {"coroots": [[1, -1]], "roots": [[1, -1]], "cartan": [[2]]},
    "SL3": {
        "coroots": [[2, -1], [-1, 2]],
        "roots": [[1, 0], [0, 1]],
        "cartan": [[2, -1], [-1, 2]],
    },
    "GL3": {
        "coroots": [[1, -1, 0], [0, 1, -1]],
        "roots": [[1, -1, 0], [0, 1, -1]],
        "cartan": [[2, -1], [-1, 2]],
    },
    "Sp4": {
        "coroots": [[2, -1], [-2, 2]],
        "roots": [[1, 0], [0, 1]],
        "cartan": [[2, -2], [-1, 2]],
    },
    "G2": {
        "coroots": [[2, -1], [-3, 2]],
        "roots": [[1, 0], [0, 1]],
        "cartan": [[2, -3], [-1, 2]],
    },
}


def _validate_cartan(cartan: Sequence[Sequence[int]]) -> None:
    r = len(cartan)
    for i in range(r):
        if len(cartan[i]) != r:
            raise ValueError("Cartan matrix must be square")
        if cartan[i][i] != 2:
            raise ValueError("Cartan matrix diagonal must be 2")
        for j in range(r):
            if i != j:
                if cartan[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be nonpositive")
                if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                    raise ValueError("Cartan zero pattern must be symmetric")
    # Finite type iff every principal minor is positive.
    for size in range(1, r + 1):
        for subset in _subsets(r, size):
            minor = [[Fraction(cartan[i][j]) for j in subset] for i in subset]
            if _det(minor) <= 0:
                raise ValueError("Cartan matrix is not of finite type")


def _subsets(n: int, size: int):
    def rec(start: int, chosen: List[int]):
        if len(chosen) == size:
            yield tuple(chosen)
            return
        for k in range(start, n):
            chosen.append(k)
            yield from rec(k + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def build_root_datum(spec) -> RootDatum:
    """Build and validate a root datum from a preset name or explicit data.

    Explicit data is a mapping {"cartan": [[..]], "coroots": [[..]], "roots": [[..]]}
    with cartan[i][j] = ⟨coroot_j, root_i⟩.  Rejects non-finite-type Cartan
    matrices and coroot/root vectors inconsistent with the Cartan matrix.
    """
    preset_name = None
    if isinstance(spec, RootDatum):
        return spec
    if isinstance(spec, str):
        if spec not in PRESETS:
            raise ValueError(
                "unknown preset %r (available: %s)" % (spec, ", ".join(sorted(PRESETS)))
            )
        preset_name = spec
        spec = PRESETS[spec]
    coroots = tuple(tuple(int(x) for x in v) for v in spec["coroots"])
    roots = tuple(tuple(int(x) for x in v) for v in spec["roots"])
    cartan = tuple(tuple(int(x) for x in row) for row in spec["cartan"])
    if not coroots or len(coroots) != len(roots) or len(cartan) != len(coroots):
        raise ValueError("coroots, roots and Cartan matrix must have matching rank")
    lattice_rank = len(coroots[0])
    if any(len(v) != lattice_rank for v in coroots) or any(len(v) != lattice_rank for v in roots):
        raise ValueError("all coroot/root vectors must have the same length")
    _validate_cartan(cartan)
    for i in range(len(roots)):
        for j in range(len(coroots)):
            if _dot(coroots[j], roots[i]) != cartan[i][j]:
                raise ValueError(
                    "pairing ⟨coroot_%d, root_%d⟩ = %s disagrees with Cartan entry %d"
                    % (j, i, _dot(coroots[j], roots[i]), cartan[i][j])
                )
    if _matrix_rank(coroots) != len(coroots):
        raise ValueError("simple coroots must be linearly independent")
    if _matrix_rank(roots) != len(roots):
        raise ValueError("simple roots must be linearly independent")
    return RootDatum(
        lattice_rank=lattice_rank,
        simple_coroots=coroots,
        simple_roots=roots,
        cartan_matrix=cartan,
        preset_name=preset_name,
    )
