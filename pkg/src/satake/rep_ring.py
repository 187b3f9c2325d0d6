"""The representation ring of the dual group over a fixed root datum.

Weight multiplicities come from the Freudenthal recursion (with the
alternating Kostant sum kept alongside as an independent cross-check),
tensor products from the Brauer–Klimyk ρ-shift algorithm, characters by
direct exact summation over weight tables, and the q-side from the
q-deformed Kostant partition function and the Lusztig q-analog of weight
multiplicity.  All values are exact (integers / Fractions / integer Laurent
polynomials); per-instance memo dictionaries make repeated queries cheap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .laurent import LaurentPoly, ONE, ZERO
from .root_datum import RootDatum, build_root_datum

Coweight = Tuple[int, ...]
TorusPoint = Tuple[Fraction, ...]


def torus_point(values, datum: RootDatum) -> TorusPoint:
    """A semisimple dual-group conjugacy class γ: nonzero rationals on a basis of Λ."""
    vals = tuple(Fraction(v) for v in values)
    if len(vals) != datum.lattice_rank:
        raise ValueError(
            "torus point needs %d coordinates, got %d" % (datum.lattice_rank, len(vals))
        )
    if any(v == 0 for v in vals):
        raise ValueError("torus point coordinates must be nonzero")
    return vals


def gamma_power(gamma: TorusPoint, nu: Sequence[int]) -> Fraction:
    """γ^ν = Π γ_i^{ν_i}, exact."""
    out = Fraction(1)
    for g, n in zip(gamma, nu):
        out *= Fraction(g) ** int(n)
    return out


class RepRing:
    """Exact computations in Rep(dual group) for one root datum."""

    def __init__(self, datum) -> None:
        self.datum = build_root_datum(datum)
        self._dominant_tables: Dict[Coweight, Dict[Coweight, int]] = {}
        self._full_weights: Dict[Coweight, Tuple[Tuple[Coweight, int], ...]] = {}
        self._tensor: Dict[Tuple[Coweight, Coweight], Dict[Coweight, int]] = {}
        self._qkostant: Dict[Tuple[Fraction, ...], LaurentPoly] = {}
        self._lusztig: Dict[Tuple[Coweight, Coweight], LaurentPoly] = {}
        self._dims: Dict[Coweight, int] = {}

    # -- helpers -----------------------------------------------------------

    def _require_dominant(self, lam) -> Coweight:
        lam = self.datum.coweight(lam)
        if not self.datum.is_dominant(lam):
            raise ValueError("coweight %r is not dominant" % (lam,))
        return lam

    def _form(self, x: Sequence, coords: Sequence) -> Fraction:
        """Weyl-invariant form (x, β) where β = Σ coords_j · coroot_j."""
        datum = self.datum
        d = datum.symmetrizer
        total = Fraction(0)
        for j, c in enumerate(coords):
            if c:
                total += Fraction(c) * d[j] * datum.pairing(x, datum.simple_roots[j])
        return total

    # -- dimensions and weights ---------------------------------------------

    def weyl_dim(self, lam) -> int:
        """Dimension of the dual-group irreducible with highest weight λ (Weyl formula)."""
        lam = self._require_dominant(lam)
        if lam in self._dims:
            return self._dims[lam]
        datum = self.datum
        rho = datum.rho_dual_fractions
        shifted = tuple(Fraction(a) + b for a, b in zip(lam, rho))
        dim = Fraction(1)
        for root in datum.positive_roots:
            dim *= datum.pairing(shifted, root) / datum.pairing(rho, root)
        assert dim.denominator == 1 and dim > 0
        self._dims[lam] = int(dim)
        return int(dim)

    def dominant_weights_below(self, lam) -> List[Tuple[int, Coweight, Coweight]]:
        """All dominant μ ≤ λ as (depth, μ, coroot-coordinates of λ−μ), depth-sorted."""
        lam = self._require_dominant(lam)
        datum = self.datum
        max_depth = int(datum.pairing(lam, datum.rho_check))
        out = []
        rank = datum.rank

        def rec(idx: int, remaining: int, coords: List[int], vec: List[int]):
            if idx == rank:
                if datum.is_dominant(vec):
                    out.append((sum(coords), tuple(vec), tuple(coords)))
                return
            alpha = datum.simple_coroots[idx]
            for c in range(remaining + 1):
                coords.append(c)
                rec(idx + 1, remaining - c, coords, [v - c * a for v, a in zip(vec, alpha)])
                coords.pop()

        rec(0, max_depth, [], list(lam))
        out.sort()
        return out

    def dominant_multiplicity_table(self, lam) -> Dict[Coweight, int]:
        """Weight multiplicities of V^λ on dominant weights, by Freudenthal recursion."""
        lam = self._require_dominant(lam)
        if lam in self._dominant_tables:
            return dict(self._dominant_tables[lam])
        datum = self.datum
        rho = datum.rho_dual_fractions
        table: Dict[Coweight, int] = {}
        for depth, mu, coords in self.dominant_weights_below(lam):
            if depth == 0:
                table[mu] = 1
                continue
            numerator = Fraction(0)
            for alpha, acoords in datum.positive_coroots:
                k = 1
                while True:
                    nu = tuple(m + k * a for m, a in zip(mu, alpha))
                    dom = datum.dominant_representative(nu).coweight
                    mult = table.get(dom, 0)
                    if mult == 0:
                        break  # weights along a root string are contiguous
                    numerator += mult * self._form(nu, acoords)
                    k += 1
            lam_mu_sum = tuple(
                Fraction(a) + Fraction(b) + 2 * r for a, b, r in zip(lam, mu, rho)
            )
            denominator = self._form(lam_mu_sum, coords)
            value = 2 * numerator / denominator
            assert value.denominator == 1 and value > 0, "Freudenthal gave %s" % value
            table[mu] = int(value)
        self._dominant_tables[lam] = table
        return dict(table)

    def weight_multiplicity(self, lam, nu) -> int:
        """dim of the ν-weight space of V^λ (Weyl-invariant in ν)."""
        lam = self._require_dominant(lam)
        nu = self.datum.coweight(nu)
        dom = self.datum.dominant_representative(nu).coweight
        return self.dominant_multiplicity_table(lam).get(dom, 0)

    def kostant_multiplicity(self, lam, nu) -> int:
        """The same multiplicity by the alternating Kostant sum (independent route)."""
        lam = self._require_dominant(lam)
        nu = self.datum.coweight(nu)
        datum = self.datum
        rho = datum.rho_dual_fractions
        target = tuple(Fraction(x) + r for x, r in zip(nu, rho))
        shifted = tuple(Fraction(x) + r for x, r in zip(lam, rho))
        n = datum.lattice_rank
        total = 0
        for matrix, length in datum.weyl_elements:
            image = tuple(
                sum(Fraction(matrix[r][c]) * shifted[c] for c in range(n)) for r in range(n)
            )
            arg = tuple(a - b for a, b in zip(image, target))
            part = self.q_kostant_partition(arg).eval_q(1)
            if part:
                total += (-1) ** length * int(part)
        return total

    def weight_table(self, lam) -> Dict[Coweight, int]:
        """The full (Weyl-invariant) weight multiplicity table of V^λ."""
        lam = self._require_dominant(lam)
        out: Dict[Coweight, int] = {}
        for mu, mult in self.dominant_multiplicity_table(lam).items():
            for nu in self.datum.weyl_orbit(mu):
                out[nu] = mult
        return out

    def weights_with_multiplicity(self, lam) -> Tuple[Tuple[Coweight, int], ...]:
        lam = self._require_dominant(lam)
        if lam not in self._full_weights:
            self._full_weights[lam] = tuple(sorted(self.weight_table(lam).items()))
        return self._full_weights[lam]

    # -- tensor products -----------------------------------------------------

    def tensor_decompose(self, lam, mu) -> Dict[Coweight, int]:
        """Multiplicities of irreducibles in V^λ ⊗ V^μ, by Brauer–Klimyk.

        ρ-shift each weight of the smaller factor against the other highest
        weight, drop the singular ones, and accumulate signs at the dominant
        representative minus ρ.
        """
        lam = self._require_dominant(lam)
        mu = self._require_dominant(mu)
        key = (lam, mu)
        if key in self._tensor:
            return dict(self._tensor[key])
        datum = self.datum
        rho = datum.rho_dual_fractions
        if self.weyl_dim(mu) <= self.weyl_dim(lam):
            iter_weight, fixed = mu, lam
        else:
            iter_weight, fixed = lam, mu
        acc: Dict[Coweight, int] = {}
        for tau, mult in self.weights_with_multiplicity(iter_weight):
            shifted = tuple(Fraction(f) + Fraction(t) + r for f, t, r in zip(fixed, tau, rho))
            dom, word, sign = datum.dominant_representative(shifted)
            if any(datum.pairing(dom, root) == 0 for root in datum.simple_roots):
                continue
            nu_frac = tuple(d - r for d, r in zip(dom, rho))
            assert all(Fraction(x).denominator == 1 for x in nu_frac)
            nu = tuple(int(x) for x in nu_frac)
            acc[nu] = acc.get(nu, 0) + sign * mult
        result = {nu: c for nu, c in acc.items() if c}
        assert all(c > 0 for c in result.values()), "negative tensor multiplicity"
        self._tensor[key] = result
        self._tensor[(mu, lam)] = result
        return dict(result)

    def tensor_multiplicity(self, lam, mu, nu) -> int:
        """dim Hom(V^ν, V^λ ⊗ V^μ)."""
        nu = self._require_dominant(nu)
        return self.tensor_decompose(lam, mu).get(nu, 0)

    # -- characters ------------------------------------------------------------

    def character_eval(self, lam, gamma: TorusPoint) -> Fraction:
        """Tr(γ, V^λ) = Σ_ν mult(ν) γ^ν, exact."""
        lam = self._require_dominant(lam)
        total = Fraction(0)
        for mu, mult in self.dominant_multiplicity_table(lam).items():
            orbit_sum = sum((gamma_power(gamma, nu) for nu in self.datum.weyl_orbit(mu)), Fraction(0))
            total += mult * orbit_sum
        return total

    def dual_character_eval(self, lam, gamma: TorusPoint) -> Fraction:
        """Tr(γ, (V^λ)*), computed as the character of V^{−w₀λ}."""
        lam = self._require_dominant(lam)
        dual = tuple(-x for x in self.datum.apply_w0(lam))
        return self.character_eval(dual, gamma)

    # -- the q-side ---------------------------------------------------------------

    def q_kostant_partition(self, beta) -> LaurentPoly:
        """q-deformed Kostant partition function of β in the positive coroots.

        The coefficient of e^β in Π_{α>0} (1 − q e^α)^{-1}: each way of writing
        β as a nonnegative-integer combination of positive coroots contributes
        q^{number of parts}.  Zero unless β lies in the Z≥0-span.
        """
        if isinstance(beta, int):
            beta = self.datum.coweight(beta)
        coords = self.datum.coroot_coordinates(beta)
        if coords is None or any(c.denominator != 1 or c < 0 for c in coords):
            return ZERO
        key = tuple(coords)
        if key in self._qkostant:
            return self._qkostant[key]
        target = tuple(int(c) for c in coords)
        roots = [c for _, c in self.datum.positive_coroots]
        memo: Dict[Tuple[int, Tuple[int, ...]], LaurentPoly] = {}

        def count(idx: int, remaining: Tuple[int, ...]) -> LaurentPoly:
            if not any(remaining):
                return ONE
            if idx == len(roots):
                return ZERO
            state = (idx, remaining)
            if state in memo:
                return memo[state]
            total = ZERO
            r = roots[idx]
            k = 0
            rem = remaining
            while all(x >= 0 for x in rem):
                total = total + LaurentPoly.q_power(k) * count(idx + 1, rem)
                k += 1
                rem = tuple(x - y for x, y in zip(rem, r))
            memo[state] = total
            return total

        result = count(0, target)
        self._qkostant[key] = result
        return result

    def lusztig_q_analog(self, lam, mu) -> LaurentPoly:
        """Lusztig's q-analog of the weight multiplicity dim V^λ(μ).

        The alternating Weyl sum of the q-Kostant partition function at
        w(λ+ρ) − (μ+ρ); its value at q = 1 is the weight multiplicity.
        """
        lam = self._require_dominant(lam)
        mu = self._require_dominant(mu)
        key = (lam, mu)
        if key in self._lusztig:
            return self._lusztig[key]
        datum = self.datum
        rho = datum.rho_dual_fractions
        shifted = tuple(Fraction(x) + r for x, r in zip(lam, rho))
        target = tuple(Fraction(x) + r for x, r in zip(mu, rho))
        total = ZERO
        n = datum.lattice_rank
        for matrix, length in datum.weyl_elements:
            image = tuple(
                sum(Fraction(matrix[r][c]) * shifted[c] for c in range(n)) for r in range(n)
            )
            arg = tuple(a - b for a, b in zip(image, target))
            part = self.q_kostant_partition(arg)
            if part:
                total = total + part if length % 2 == 0 else total - part
        self._lusztig[key] = total
        return total
