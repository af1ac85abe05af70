"""
Tests for the auxiliary pairs phi_m, psi_m.
"""

import pytest

from stringforge.diffring import D_expr, DiffExpr, denominator_exponent, diff_weight
from stringforge.phipsi import check_unwinding, phi_psi, phi_psi_explicit
from stringforge.specialize import evaluate, leading_order_series


@pytest.mark.unit
@pytest.mark.phipsi
class TestPhiPsi:
    """Recursive construction from phi_0 = 0, psi_0 = x."""

    def test_index_zero(self, jets):
        pair = phi_psi(0, jets)
        assert pair.phi == 0
        assert pair.psi == DiffExpr.x(jets)

    def test_index_one(self, jets, atoms):
        pair = phi_psi(1, jets)
        assert pair.phi == atoms["dz"] / atoms["D"]
        assert pair.psi == -(atoms["z"] * atoms["du"]) / atoms["D"]

    def test_symmetric_index_one(self, jets, atoms):
        pair = phi_psi(1, jets)
        assert pair.phi.symmetric() == 1 / atoms["dz"]
        assert pair.psi.symmetric() == 0

    def test_pairs_are_memoized(self, jets):
        assert phi_psi(2, jets) is phi_psi(2, jets)

    def test_negative_index(self, jets):
        with pytest.raises(ValueError):
            phi_psi(-1, jets)

    def test_to_dict(self, jets):
        record = phi_psi(0, jets).to_dict()
        assert record == {"m": 0, "phi": "0", "psi": "x"}

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_unwinding(self, jets, m):
        assert check_unwinding(m, jets)

    def test_unwinding_needs_positive_index(self, jets):
        with pytest.raises(ValueError):
            check_unwinding(0, jets)

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
    def test_weight_and_denominator(self, jets, m):
        pair = phi_psi(m, jets)
        for expr in (pair.phi, pair.psi):
            assert diff_weight(expr) == -1
            assert denominator_exponent(expr, D_expr(jets)) == 2 * m - 1


@pytest.mark.integration
@pytest.mark.phipsi
class TestExplicitResidues:
    """phi_m, psi_m on the leading-order series against direct residues of V."""

    @pytest.mark.parametrize("m", [0, 1, 2, 3])
    def test_quartic(self, jets, quartic, m):
        u, z = leading_order_series(quartic, 3)
        pair = phi_psi(m, jets)
        explicit_phi, explicit_psi = phi_psi_explicit(quartic, m, u, z)
        assert evaluate(pair.phi, u, z) == explicit_phi
        assert evaluate(pair.psi, u, z) == explicit_psi

    @pytest.mark.parametrize("m", [0, 1, 2])
    def test_cubic(self, jets, cubic, m):
        u, z = leading_order_series(cubic, 3)
        pair = phi_psi(m, jets)
        explicit_phi, explicit_psi = phi_psi_explicit(cubic, m, u, z)
        assert evaluate(pair.phi, u, z) == explicit_phi
        assert evaluate(pair.psi, u, z) == explicit_psi

    def test_negative_index(self, quartic):
        u, z = leading_order_series(quartic, 1)
        with pytest.raises(ValueError):
            phi_psi_explicit(quartic, -1, u, z)
