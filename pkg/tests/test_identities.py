import pytest

from qpart import identities as ids
from qpart.partitions import ALL, DISTINCT, RR, ConstraintSet, Partition, weighted_gf, weighted_pair_gf
from qpart.series import Polynomial, TruncatedSeries, gaussian, monomial, series_equal

SERIES_NAMES = [n for n, d in ids.CATALOG.items() if d.kind != ids.POLYNOMIAL]


def sample_params(d):
    return {p.name: max(p.minimum, 2 if p.default is None else p.default) for p in d.params}


def test_ramanujan_raw_left_side():
    got = ids.build("ramanujan_raw", "L", T=5)
    assert got.to_text() == "1 - q*x - q^2*x - q^3*x - q^4*x + q^4*x^2 - q^5*x + q^5*x^2"
    assert got.flip_sign("x") == weighted_gf(RR, {"nu": "x"}, 5)


def test_thm4_small_cases():
    assert ids.build("thm4", "L", {"L": 0}) == 1
    assert ids.build("thm4", "R", {"L": 0}) == 1
    assert ids.build("thm4", "R", {"L": 1}) == 1
    assert ids.build("thm4", "L", {"L": 1}) == 1


def test_thm4_rhs_without_correction_counts_bounded_gap_two():
    for L in range(9):
        rhs = ids.thm4_rhs({"L": L}, None)
        T = max(rhs.degree("q"), 0)
        oracle = weighted_gf(ConstraintSet(gap=2, max_part=L), {"nu": "x"}, T)
        assert TruncatedSeries.from_polynomial(rhs, T) == oracle


def test_thm4_printed_form_fails_from_three():
    """The printed correction q^(L^2) x^L only coincides with the needed one at L=1."""
    for L in range(13):
        report = ids.verify("thm4", {"L": L})
        assert report.passed == (L % 2 == 0 or L == 1)
        if not report.passed:
            A = (L + 1) // 2
            assert report.witness.monomial == monomial(q=A * A, x=A)
            assert (report.witness.lhs, report.witness.rhs) == (0, 1)


def test_thm4_amended_holds():
    for L in range(17):
        assert ids.verify("thm4_amended", {"L": L}).passed


@pytest.mark.parametrize("name", ["thm4", "thm4_amended"])
def test_mutation_is_detected(name):
    mutant = ids.mutated_catalog([name])
    report = ids.verify(name, {"L": 1}, catalog=mutant)
    assert not report.passed
    assert report.witness.monomial == monomial(q=1, x=1)
    # even L carries no correction, so the mutation is invisible there
    assert ids.verify(name, {"L": 4}, catalog=mutant).passed


def test_mutated_catalog_rejects_unknown_names():
    with pytest.raises(ids.CatalogError):
        ids.mutated_catalog(["ramanujan"])


def test_corollary_edges():
    for L in range(6):
        assert ids.build("corollary", "L", {"L": L, "m": 0}) == 1
        assert ids.build("corollary", "R", {"L": L, "m": 0}) == 1
    for L in range(8):
        for m in range(8):
            assert ids.build("corollary", "R", {"L": L, "m": m}) == gaussian(L, m)


def test_thmL_at_zero():
    for T in (0, 5, 12):
        assert ids.build("thmL", "L", {"N": 0}, T) == TruncatedSeries.one(T)
        assert ids.build("thmL", "R", {"N": 0}, T) == TruncatedSeries.one(T)


@pytest.mark.parametrize("name", SERIES_NAMES)
def test_every_side_is_one_at_zero_truncation(name):
    d = ids.CATALOG[name]
    p = sample_params(d)
    # sums starting at j >= 1 parts leave out the empty partition
    expected = TruncatedSeries.zero(0) if name in ("gf_parts", "gf_dist") else TruncatedSeries.one(0)
    for side in d.sides:
        assert ids.build(name, side, p, 0) == expected


@pytest.mark.parametrize("name", SERIES_NAMES)
def test_verification_at_default_parameters(name):
    d = ids.CATALOG[name]
    T = 10 if name in ("thm5", "thm7") else 16
    report = ids.verify(name, sample_params(d), T)
    assert report.passed, report.summary()


@pytest.mark.parametrize("name", [n for n in SERIES_NAMES if ids.CATALOG[n].oracle is not None])
def test_oracle_agreement(name):
    d = ids.CATALOG[name]
    T = 10 if name in ("thm5", "thm7", "ismail_lhs_interp", "ismail_rhs_interp", "ismail_simpl",
                       "main_connection") else 16
    report = ids.oracle_check(name, sample_params(d), T)
    assert report.passed, report.summary()


@pytest.mark.parametrize("name", SERIES_NAMES)
def test_aux_degrees_bounded_by_q_degree(name):
    # each counted part contributes at least q^1, so no auxiliary exponent can exceed the q exponent
    d = ids.CATALOG[name]
    for side in d.sides:
        s = ids.build(name, side, sample_params(d), 10)
        for m, _ in s.items():
            assert max(m.aux) <= m.q, (side, m)


def test_truncation_coherence():
    high = ids.build("ramanujan", "R", T=24)
    assert high.truncate(11) == ids.build("ramanujan", "R", T=11)


def test_section_three_chain():
    T = 20
    chain = [ids.build("ismail_lhs_interp", "L", T=T), ids.build("main_connection", "R", T=T),
             ids.build("ismail_rhs_interp", "L", T=T)]
    assert chain[0] == chain[1] == chain[2]


def test_section_four_chain():
    T = 25
    right = ids.build("ramanujan", "R", T=T)
    chain = [right, ids.build("nk_repr", "L", T=T), ids.build("nk_repr", "R", T=T),
             ids.build("rr_last", "L", T=T), ids.build("ramanujan_raw", "L", T=T).flip_sign("x")]
    for other in chain[1:]:
        assert series_equal(right, other) == (True, None)


def test_gf_bdd_three_ways():
    for N in range(1, 7):
        for j in range(1, N + 1):
            p = {"j": j, "N": N}
            sides = [ids.build("gf_bdd", s, p, 20) for s in "LMR"]
            oracle = weighted_gf(ConstraintSet(min_part=j, max_part=N), {"nu": "x"}, 20)
            assert sides[0] == sides[1] == sides[2] == oracle


def test_thm5_distinguishing_pairs():
    left_log, right_log = [], []
    weighted_pair_gf(DISTINCT, ALL, "largest_le_nu", *ids.PAIR_WEIGHTS, 12, log=left_log)
    weighted_pair_gf(DISTINCT, ALL, "durfee_le_run", *ids.PAIR_WEIGHTS, 12, log=right_log)
    a = (Partition((3, 2)), Partition((2, 1)))
    b = (Partition((2, 1)), Partition((3, 2)))
    assert a in left_log and a not in right_log
    assert b in right_log and b not in left_log
    assert len(left_log) == len(right_log)


def test_parameter_validation():
    with pytest.raises(ids.CatalogError):
        ids.verify("thm4", {"L": -1})
    with pytest.raises(ids.CatalogError):
        ids.verify("thm4", {})
    with pytest.raises(ids.CatalogError):
        ids.verify("thm4", {"L": 2, "N": 1})
    with pytest.raises(ids.CatalogError):
        ids.verify("gf_bdd", {"j": 3, "N": 2})
    with pytest.raises(ids.CatalogError):
        ids.verify("no_such_identity")
    with pytest.raises(ids.CatalogError):
        ids.build("ramanujan", "Z")
    with pytest.raises(ids.CatalogError):
        ids.verify("ramanujan", T=-1)


def test_report_serialisation():
    rep = ids.verify("thm4", {"L": 3})
    d = rep.to_dict()
    assert d["pass"] is False
    assert d["witness"] == {"monomial": {"q": 4, "x": 2}, "monomial_text": "q^4*x^2", "lhs": "0", "rhs": "1"}
    assert "seconds" not in d
    assert "seconds" in rep.to_dict(timing=True)
    assert rep.summary() == "FAIL thm4(L=3) exact [L*D=R*D]: coefficient of q^4*x^2 is 0 vs 1"


def test_catalog_descriptions():
    names = [d.describe()["name"] for d in ids.CATALOG.values()]
    assert len(names) == len(set(names))
    for d in ids.CATALOG.values():
        info = d.describe()
        assert info["anchor"] and info["sides"]
        for p in info["params"]:
            assert p["min"] >= 0


def test_cleared_denominator_is_honest():
    # the cleared comparison must agree with the direct polynomial sides when they exist
    for L in (0, 2, 4, 6):
        lhs, rhs, D = ids.thm4_cleared({"L": L}, "amended")
        assert lhs == ids.thm4_lhs({"L": L}) * D
        assert rhs == ids.thm4_rhs({"L": L}, "amended") * D
    assert isinstance(D, Polynomial)
