"""Acceptance gate: nine criteria, each with its time limit.

Every test prints one ``criterion N: PASS|FAIL`` line, also when it fails.
Run ``python tests/test_acceptance.py`` to get the nine lines without pytest.
"""

import os
import sys
import time
from contextlib import contextmanager

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from adjlab.harness.cli import run_target  # noqa: E402

_cache = {}
LINES = []  # printed by the terminal summary hook in conftest.py


def scenario(name, field="q", **params):
    key = (name, field, tuple(sorted(params.items())))
    if key not in _cache:
        start = time.monotonic()
        rep = run_target(name, seed=0, field=field, params=params)
        _cache[key] = (rep, time.monotonic() - start)
    return _cache[key]


def statuses(rep):
    return {a.id: a.status for a in rep.assertions}


def _emit(line):
    LINES.append(line)
    if __name__ == "__main__":
        print(line, flush=True)


@contextmanager
def criterion(number, title):
    notes = []
    try:
        yield notes
    except BaseException:
        _emit(f"criterion {number}: FAIL  {title}  {'; '.join(notes)}")
        raise
    _emit(f"criterion {number}: PASS  {title}  {'; '.join(notes)}")


def require_pass(rep, ids, notes):
    st = statuses(rep)
    bad = {i: st.get(i, "missing") for i in ids if st.get(i) != "pass"}
    if bad:
        notes.append(f"not passing: {bad}")
    assert not bad


def within(seconds, limit, notes):
    notes.append(f"{seconds:.1f}s of {limit}s")
    assert seconds < limit


@pytest.mark.acceptance
def test_criterion_1_pfaffian_conductor():
    with criterion(1, "conductor of the three-pfaffian slice equals p123 + I_X (n=5)") as notes:
        rep_q, t_q = scenario("example_3_2", n=5)
        require_pass(rep_q, ["pfaffian.conductor_123"], notes)
        within(t_q, 300, notes)
        rep_p, t_p = scenario("example_3_2", field="p:32003", n=5)
        require_pass(rep_p, ["pfaffian.conductor_123"], notes)
        within(t_p, 30, notes)


@pytest.mark.acceptance
def test_criterion_2_pfaffian_defect_sum():
    with criterion(2, "sum over all ten triple slices equals the entry ideal mod I_X") as notes:
        rep, t = scenario("example_3_2", n=5)
        require_pass(rep, ["pfaffian.defect_sum"], notes)
        within(t, 600, notes)


@pytest.mark.acceptance
def test_criterion_3_slice_identity():
    with criterion(3, "node slice identity and randomized slices of non-lci varieties") as notes:
        node, t1 = scenario("node_suite")
        require_pass(node, ["node.slice_identity"], notes)
        rnd, t2 = scenario("eq3_random")
        ids = [a.id for a in rnd.assertions if a.id.startswith("eq3.")]
        varieties = {i.split(".")[1] for i in ids}
        per = {v: sum(1 for i in ids if i.split(".")[1] == v) for v in varieties}
        notes.append(f"{len(varieties)} varieties, slices per variety {sorted(per.values())}")
        assert len(varieties) >= 3 and min(per.values()) >= 5
        require_pass(rnd, ids, notes)
        within(t1 + t2, 120, notes)


@pytest.mark.acceptance
def test_criterion_4_fiber_dimension():
    with criterion(4, "fiber dimension of truncation maps on node and seeded lci cases") as notes:
        rep, t = scenario("prop_4_3")
        require_pass(rep, ["prop43.node_2_4", "prop43.node_3_5", "prop43.node_refusal_0_1"], notes)
        cases = [a.id for a in rep.assertions if a.id.startswith("prop43.case_")]
        notes.append(f"{len(cases)} seeded cases")
        assert len(cases) >= 10
        require_pass(rep, cases, notes)
        within(t, 120, notes)


@pytest.mark.acceptance
def test_criterion_5_toric_quotient():
    with criterion(5, "toric 1/3(1,1,1): sandwich, closure m^2, defect closure m^5") as notes:
        rep, t = scenario("example_3_1_toric")
        require_pass(rep, ["toric.jacobian_sandwich", "toric.jhat_closure_m2", "toric.defect_closure_m5"], notes)
        within(t, 600, notes)


@pytest.mark.acceptance
def test_criterion_6_inversion_subspaces():
    with criterion(6, "inversion check on coordinate subspaces and the node in the plane") as notes:
        rep, t = scenario("inversion_subspace")
        ids = [f"inversion.subspace_d{d}_c{c}" for d, c in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)]]
        require_pass(rep, ids + ["inversion.node_in_plane"], notes)
        within(t, 60, notes)


@pytest.mark.acceptance
def test_criterion_7_mld_oracle():
    with criterion(7, "mld oracle: empty boundary, (xy), brute force agreement") as notes:
        rep, t = scenario("mld_corpus")
        ids = [f"mld.empty_N{k}" for k in range(1, 7)] + ["mld.xy_plane", "mld.brute_force_agreement"]
        require_pass(rep, ids, notes)
        witness = next(a.witness for a in rep.assertions if a.id == "mld.brute_force_agreement")
        notes.append(f"{witness['cases']} corpus pairs, {witness['neg_inf']} with -inf")
        assert witness["discrepancies"] == []
        within(t, 120, notes)


@pytest.mark.acceptance
def test_criterion_8_jet_estimates():
    with criterion(8, "jet estimates never certify below the oracle (levels <= 6)") as notes:
        rep, t = scenario("jet_estimate_cross")
        require_pass(rep, ["jets.no_false_certificate"], notes)
        within(t, 300, notes)


@pytest.mark.acceptance
def test_criterion_9_property_suites():
    import test_properties as props

    with criterion(9, "randomized engine properties") as notes:
        props.CASES.clear()
        start = time.monotonic()
        for prop in props.PROPERTY_TESTS:
            prop()
        total = sum(props.CASES.values())
        notes.append(f"{total} cases")
        assert total >= 500
        within(time.monotonic() - start, 180, notes)


if __name__ == "__main__":
    import conftest  # noqa: F401  (hypothesis profile)

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
