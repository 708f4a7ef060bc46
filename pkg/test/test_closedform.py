import pytest
from fractions import Fraction

from src.closedform import (
    MEMBER,
    RegionVerdict,
    degree2,
    degree3,
    degree3_nschur,
    degree3_region_table,
    degree4,
    degree5_fn,
    degree6_fn,
    region_verdict,
    simplex_grid,
)
from src.families import elementary, normalized_schur
from src.lorentz import Mode, is_lorentzian
from src.partitions import generate_partitions
from src.sampling import default_rng, random_rationals, random_sympoly
from src.symfunc import Basis, SymPoly, convert_basis


def ones(degree):
    return [1] * len(generate_partitions(degree))


class TestRegionVerdict:
    """Test the verdict type"""

    def test_document(self):
        """Test the JSON keys"""
        assert MEMBER.to_dict() == {"member": True, "failedInequality": None}
        assert RegionVerdict(False, "ac <= b^2").to_dict()["failedInequality"] == "ac <= b^2"

    def test_consistency(self):
        """Test that membership and a named inequality exclude each other"""
        with pytest.raises(ValueError):
            RegionVerdict(True, "ac <= b^2")
        with pytest.raises(ValueError):
            RegionVerdict(False)


class TestDegree2:
    """Test the quadratic region"""

    def test_chain(self):
        """Test 0 <= a <= b"""
        assert degree2(1, 2).member
        assert degree2(0, 1).member
        assert degree2(2, 1).failed_inequality == "0 <= a <= b"

    def test_zero(self):
        """Test that zero is outside"""
        assert degree2(0, 0).failed_inequality == "nonzero"

    def test_one_variable(self):
        """Test that polynomial mode needs two variables"""
        with pytest.raises(ValueError, match="at least 2 variables"):
            degree2(1, 1, Mode.polynomial(1))


class TestDegree3:
    """Test the cubic regions"""

    def test_three_variables(self):
        """Test (1,1,1) in three variables"""
        assert degree3(1, 1, 1, Mode.polynomial(3)).member

    def test_function_mode(self):
        """Test ac <= b^2"""
        assert degree3(1, 3, 4).member
        assert degree3(1, 2, 7).failed_inequality == "ac <= b^2"

    def test_chain_violated(self):
        """Test a decreasing chain"""
        assert degree3(1, 3, 2).failed_inequality == "0 <= a <= b <= c"

    def test_polynomial_inequality(self):
        """Test ab + (n-1)ac <= nb^2 at its boundary"""
        assert degree3(1, 2, 6, Mode.polynomial(3)).member
        verdict = degree3(1, 2, Fraction(601, 100), Mode.polynomial(3))
        assert verdict.failed_inequality == "ab + (n-1)ac <= nb^2"

    def test_too_few_variables(self):
        """Test that the polynomial closed form needs three variables"""
        with pytest.raises(ValueError, match="at least 3 variables"):
            degree3(1, 1, 1, Mode.polynomial(2))

    def test_rational_strings(self):
        """Test coefficients given as p/q strings"""
        assert degree3("1/4", "1/2", "1").member

    def test_nesting(self, rng):
        """Test function mode ⊆ six variables ⊆ three variables"""
        for _ in range(300):
            a, b, c = sorted(random_rationals(rng, 3))
            fn = degree3(a, b, c).member
            n5 = degree3(a, b, c, Mode.polynomial(6)).member
            n2 = degree3(a, b, c, Mode.polynomial(3)).member
            assert not fn or n5
            assert not n5 or n2


class TestDegree3NormalizedSchur:
    """Test the cubic region in the normalized Schur basis"""

    def test_member(self):
        """Test Ns_3 + 2Ns_21 - Ns_111"""
        assert degree3_nschur(1, 2, -1).member

    def test_non_member(self):
        """Test Ns_3 + 4Ns_111 in three variables"""
        verdict = degree3_nschur(1, 0, 4, Mode.polynomial(3))
        assert verdict.failed_inequality == "ac - (1/n)a(b + c) <= b^2"

    def test_sign_conditions(self):
        """Test a, b and b + c non-negative"""
        assert degree3_nschur(-1, 2, 3).failed_inequality == "a >= 0"
        assert degree3_nschur(1, -1, 3).failed_inequality == "b >= 0"
        assert degree3_nschur(1, 1, -2).failed_inequality == "b + c >= 0"

    @pytest.mark.parametrize("mode", [Mode.function(), Mode.polynomial(3), Mode.polynomial(5)])
    def test_agrees_with_mtilde_region(self, mode, rng):
        """Test against the m̃ region after a change of basis"""
        for _ in range(200):
            a, b, c = random_rationals(rng, 3)
            c = c - 3 if rng.random() < 0.3 else c
            if not (a or b or c):
                continue
            f = SymPoly.from_values(3, Basis.NSCHUR, [a, b, c])
            assert degree3_nschur(a, b, c, mode).member == degree3(
                *convert_basis(f, Basis.MTILDE).values(), mode=mode
            ).member


class TestDegree4:
    """Test the quartic regions"""

    def test_threshold_quartic(self, quartic_threshold):
        """Test (1,2,2,5,5) in four and five variables"""
        values = quartic_threshold.values()
        assert degree4(*values, mode=Mode.polynomial(4)).member
        verdict = degree4(*values, mode=Mode.polynomial(5))
        assert verdict.failed_inequality == "a(c+d(n-2)) <= (n-1)b^2"
        assert degree4(*values).failed_inequality == "ad <= b^2"

    def test_second_inequality(self):
        """Test (b+c)e <= 2d^2 in function mode"""
        assert degree4(1, 1, 1, 1, 3).failed_inequality == "(b+c)e <= 2d^2"

    def test_m_concavity_gap_quartic(self, m_concavity_gap_quartic):
        """Test a Lorentzian function whose ν_f is not M-concave"""
        assert degree4(*m_concavity_gap_quartic.values()).member

    def test_elementary(self):
        """Test e_4 in every mode"""
        assert degree4(0, 0, 0, 0, 1).member
        for n in range(4, 9):
            assert degree4(0, 0, 0, 0, 1, mode=Mode.polynomial(n)).member


class TestDegree5:
    """Test the quintic function region"""

    def test_constant(self):
        """Test all coefficients one"""
        assert degree5_fn(*ones(5)).member

    def test_chain_with_gap(self):
        """Test a chain with b = d = 1 and f = 2"""
        assert degree5_fn(1, 1, 1, 1, 1, 2, 2).failed_inequality == "bf <= d^2"

    def test_cubic_condition(self):
        """Test (d+2e)g <= 3f^2"""
        assert degree5_fn(1, 1, 1, 1, 1, 1, 2).failed_inequality == "(d+2e)g <= 3f^2"

    def test_chain(self):
        """Test a decreasing chain"""
        assert degree5_fn(2, 1, 1, 1, 1, 1, 1).failed_inequality == "0 <= a <= b <= c <= d <= e <= f <= g"


class TestDegree6:
    """Test the sextic function region"""

    def test_constant(self):
        """Test all coefficients one"""
        assert degree6_fn(dict(zip(generate_partitions(6), ones(6)))).member

    def test_normalized_schur(self):
        """Test Ns_222"""
        f = convert_basis(normalized_schur((2, 2, 2)), Basis.MTILDE)
        assert degree6_fn(f.coeffs).member

    def test_string_keys(self):
        """Test serialized partitions as keys and missing keys as zero"""
        assert degree6_fn({"[1,1,1,1,1,1]": 1}).member

    def test_q31_failure(self):
        """Test two dominance-maximal partitions caught by Q31"""
        c = {lam: 1 for lam in generate_partitions(6)}
        c[(6,)] = c[(5, 1)] = c[(4, 2)] = 0
        assert degree6_fn(c).failed_inequality == "Q31 has one positive eigenvalue"

    def test_cover_violation(self):
        """Test the tag of a failed dominance cover"""
        c = {lam: 1 for lam in generate_partitions(6)}
        c[(3, 2, 1)] = Fraction(1, 2)
        assert degree6_fn(c).failed_inequality == "c411 <= c321"

    def test_negative(self):
        """Test the non-negativity tag"""
        assert degree6_fn({(4, 1, 1): -1, (1, 1, 1, 1, 1, 1): 1}).failed_inequality == "c411 >= 0"

    def test_wrong_weight(self):
        """Test that partitions must have weight six"""
        with pytest.raises(ValueError, match="expected 6"):
            degree6_fn({(5,): 1})


class TestDispatch:
    """Test routing between closed forms and the general tester"""

    def test_closed_forms(self, quartic_threshold):
        """Test dispatch by degree"""
        assert region_verdict(quartic_threshold, Mode.polynomial(4)).member
        assert not region_verdict(quartic_threshold, Mode.polynomial(5)).member
        assert region_verdict(elementary(5)).member

    def test_general_tester_fallback(self):
        """Test degree 7 and a cubic in two variables"""
        assert region_verdict(elementary(7)).member
        f = SymPoly.from_values(3, Basis.MTILDE, [1, 1, 1])
        assert region_verdict(f, Mode.polynomial(2)).member

    def test_fallback_tags_failure_kind(self):
        """Test that the fallback names the failed condition"""
        f = SymPoly.from_values(5, Basis.MTILDE, [2, 1, 1, 1, 1, 1, 1])
        assert region_verdict(f, Mode.polynomial(5)).failed_inequality == "dominance-D"

    def test_zero(self):
        """Test a zero input of degree 7"""
        assert region_verdict(SymPoly(7, Basis.MTILDE, {})).failed_inequality == "nonzero"


class TestRegionTable:
    """Test the sampled degree-3 regions"""

    def test_grid(self):
        """Test the simplex grid"""
        points = simplex_grid(4)
        assert len(points) == 15
        assert all(sum(p) == 1 for p in points)
        with pytest.raises(ValueError):
            simplex_grid(0)

    def test_table(self, mock_config):
        """Test columns, size and nesting of the sampled regions"""
        table = degree3_region_table()
        assert list(table.columns) == ["a", "b", "c", "n2", "n5", "fn"]
        assert len(table) == 66
        assert (~table["fn"] | table["n5"]).all()
        assert (~table["n5"] | table["n2"]).all()
        corner = table[(table["a"] == "0") & (table["b"] == "0")].iloc[0]
        assert corner["fn"] and corner["n2"]
        assert table["n2"].sum() > table["fn"].sum()

    def test_zero_steps_rejected(self, mock_config):
        """Test that steps=0 is refused rather than replaced by the default"""
        with pytest.raises(ValueError, match="at least one step"):
            degree3_region_table(steps=0)

    @pytest.mark.slow
    def test_full_grid_nesting(self, mock_config):
        """Test fn ⊆ n5 ⊆ n2 on all 10011 points of the 140-step grid"""
        table = degree3_region_table(steps=140)
        assert len(table) == 10011
        assert (~table["fn"] | table["n5"]).all()
        assert (~table["n5"] | table["n2"]).all()
        assert table["n2"].sum() > table["n5"].sum() > table["fn"].sum() > 0


F = Fraction

# (degree, m̃ values in generation order, mode, coefficient to push out, inequality it breaks)
TIGHT_POINTS = [
    (4, [1, 2, 2, 4, 4], Mode.function(), 0, "ad <= b^2"),
    (4, [F(1, 4), 1, 1, 2, 4], Mode.function(), 4, "(b+c)e <= 2d^2"),
    (4, [F(16, 11), 2, 2, 3, 3], Mode.polynomial(5), 0, "a(c+d(n-2)) <= (n-1)b^2"),
    (4, [F(1, 2), 1, 1, 2, 5], Mode.polynomial(5), 4, "(b+c)(d+e(n-3)) <= 2(n-2)d^2"),
    (5, [F(1, 3), 1, 2, 3, 3, 4, 5], Mode.function(), 0, "ad <= b^2"),
    (5, [F(1, 4), 1, 2, 3, 3, 4, F(16, 3)], Mode.function(), 6, "(d+2e)g <= 3f^2"),
    (5, [F(1, 4), 1, F(3, 2), 2, 3, 4, 5], Mode.function(), 5, "bf <= d^2"),
    (5, [F(1, 10), F(1, 2), 1, 2, 2, 4, 5], Mode.function(), 2, "cf <= e^2"),
    (5, [F(1, 4), 1, 2, 3, 4, 7, 10], Mode.function(), 5, "det[[b,c,d],[c,c,e],[d,e,f]] >= 0"),
    (6, [F(1, 3), 1, 2, 3, 3, 4, F(9, 2), 4, 5, F(11, 2), 6], Mode.function(), 0, "c6 c411 <= c51^2"),
    (6, [F(1, 4), 1, 3, 3, 3, 4, F(9, 2), 4, F(16, 3), 6, 7], Mode.function(), 8,
     "c2211(c42 + c33) <= 2 c321^2"),
    (6, [F(1, 4), 1, 2, 3, 3, 4, F(9, 2), 4, 5, F(11, 2), F(242, 39)], Mode.function(), 10,
     "c111111(c3111 + 3 c2211) <= 4 c21111^2"),
    (6, [F(1, 4), 1, 2, 3, 3, 4, 5, 4, 6, 7, 8], Mode.function(), 6, "Q31 has one positive eigenvalue"),
    (6, [F(1, 4), 1, 2, 3, 3, 4, F(9, 2), 4, 5, 6, 7], Mode.function(), 9, "Q211 has one positive eigenvalue"),
]


class TestTightBoundaries:
    """Test points where one inequality of a closed form holds with equality"""

    @pytest.mark.parametrize("degree,values,mode,index,tag", TIGHT_POINTS)
    def test_equality_is_member(self, degree, values, mode, index, tag):
        """Test that the tight point is inside and agrees with the reduced tester"""
        f = SymPoly.from_values(degree, Basis.MTILDE, values)
        assert region_verdict(f, mode).member
        assert is_lorentzian(f, mode).lorentzian

    @pytest.mark.parametrize("degree,values,mode,index,tag", TIGHT_POINTS)
    def test_pushed_out(self, degree, values, mode, index, tag):
        """Test that moving one coefficient by 1/100 breaks exactly that inequality"""
        bumped = list(values)
        bumped[index] += Fraction(1, 100)
        f = SymPoly.from_values(degree, Basis.MTILDE, bumped)
        assert region_verdict(f, mode).failed_inequality == tag
        assert not is_lorentzian(f, mode).lorentzian


@pytest.mark.slow
class TestAgreementWithTester:
    """Test every closed form against the reduced tester"""

    @pytest.mark.parametrize("degree", [2, 3, 4, 5, 6])
    def test_random_suite(self, degree):
        """Test agreement on random samples in function mode and several n"""
        rng = default_rng(degree)
        modes = [Mode.function()] + ([Mode.polynomial(n) for n in range(degree, degree + 4)] if degree <= 4 else [])
        for sample in range(500):
            f = random_sympoly(rng, degree, chain=sample % 5 != 0)
            for mode in modes:
                assert region_verdict(f, mode).member == is_lorentzian(f, mode).lorentzian, f.to_json()
