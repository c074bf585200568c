import json

import pytest

from ffhyper import (CapacityError, DomainError, SeriesParams, field_for_order, verify_eps_reduction,
                     verify_equal_reduction, verify_genfunc_forward, verify_genfunc_local,
                     verify_genfunc_reversed, verify_reduction_cov1, verify_reduction_cov2,
                     verify_reduction_split)
from ffhyper.identities import (IDENTITIES, Instance, check, enumerate_instances, exhaustive_size,
                                plan_sweep, sample_instances, sweep)


def P(q, a, bs, cs, xs):
    return SeriesParams.from_indices(field_for_order(q), a, bs, cs, xs)


def test_split_example_and_preconditions():
    rep = verify_reduction_split(P(5, 1, [2, 3], [1, 2], [1, 2]), k=0, l=1)
    assert rep.equal and rep.float_ok
    with pytest.raises(DomainError, match="n >= 2"):
        verify_reduction_split(P(5, 1, [2], [1], [1]), k=0, l=0)
    with pytest.raises(DomainError, match="x_l"):
        verify_reduction_split(P(5, 1, [2, 3], [1, 2], [1, 0]), k=0, l=1)
    with pytest.raises(DomainError, match="differ"):
        verify_reduction_split(P(5, 1, [2, 3], [1, 2], [1, 2]), k=1, l=1)


def test_split_literal_breaks_only_at_zero_argument():
    ctx = field_for_order(5)
    for inst in sample_instances("reduction_split", 5, 2, 200, seed=1, form="literal"):
        rep = check(inst, "literal", float_check=False)
        if inst.x[inst.k] != 0:
            assert rep.equal


def test_cov_forms():
    assert verify_reduction_cov1(P(5, 2, [1, 3], [2, 2], [3, 4]), 1, 0).equal
    assert verify_reduction_cov2(P(5, 2, [1, 3], [2, 2], [3, 4]), 1, 0, t=0).equal
    assert verify_reduction_cov2(P(7, 2, [1, 3], [2, 5], [3, 4]), 0, 1, t=3).equal
    with pytest.raises(DomainError, match="x_k"):
        verify_reduction_cov2(P(5, 2, [1, 3], [2, 2], [0, 4]), 0, 1, t=2)
    with pytest.raises(DomainError):
        verify_reduction_cov1(P(5, 2, [1, 3], [2, 2], [3, 4]), 0, 0)


def test_eps_and_equal_reductions():
    assert verify_eps_reduction(P(5, 1, [0, 2], [3, 1], [2, 3]), k=0).equal
    assert verify_eps_reduction(P(5, 1, [0, 2], [3, 1], [0, 3]), k=0).rhs.is_zero()
    with pytest.raises(DomainError, match="differ from 1"):
        verify_eps_reduction(P(5, 1, [0, 2], [3, 1], [1, 3]), k=0)
    with pytest.raises(DomainError, match="trivial"):
        verify_eps_reduction(P(5, 1, [1, 2], [3, 1], [2, 3]), k=0)
    assert verify_equal_reduction(P(7, 4, [2, 1], [2, 5], [3, 6]), k=0).equal
    with pytest.raises(DomainError):
        verify_equal_reduction(P(7, 4, [2], [2], [3]), k=0)
    with pytest.raises(DomainError, match="nonzero"):
        verify_equal_reduction(P(7, 4, [2, 1], [2, 5], [0, 6]), k=0, form="literal")
    assert verify_equal_reduction(P(7, 4, [2, 1], [2, 5], [0, 6]), k=0).equal


def test_generating_functions():
    assert verify_genfunc_forward(P(5, 1, [2, 3], [1, 1], [2, 4]), t=3).equal
    assert verify_genfunc_forward(P(7, 1, [2], [3], [5]), t=2).equal
    assert verify_genfunc_reversed(P(7, 5, [2, 3], [1, 4], [2, 6]), t=3).equal
    assert verify_genfunc_local(P(5, 1, [2, 3], [1, 1], [2, 4]), k=1, t=2).equal
    for bad_t in (0, 1):
        with pytest.raises(DomainError):
            verify_genfunc_forward(P(5, 1, [2, 3], [1, 1], [2, 4]), t=bad_t)
    with pytest.raises(DomainError, match="slot index"):
        verify_genfunc_local(P(5, 1, [2, 3], [1, 1], [2, 4]), k=2, t=2)


def test_literal_counterexample_is_detected():
    # A = C_k makes the trivial-character boundary term appear
    rep = verify_eps_reduction(P(5, 1, [0, 2], [1, 3], [2, 3]), k=0, form="literal")
    assert not rep.equal
    assert verify_eps_reduction(P(5, 1, [0, 2], [1, 3], [2, 3]), k=0).equal


@pytest.mark.parametrize("identity", IDENTITIES)
def test_exhaustive_q3(identity):
    insts = list(enumerate_instances(identity, 3, 2))
    assert insts
    assert all(check(i, float_check=False).equal for i in insts)


def test_exhaustive_includes_degenerate_cases():
    split = list(enumerate_instances("reduction_split", 3, 2))
    assert any(i.x[i.k] == 0 for i in split)
    cov2 = list(enumerate_instances("reduction_cov2", 3, 2))
    assert any(i.t == 0 for i in cov2)


def test_sampling_is_seeded_and_admissible():
    a = sample_instances("equal_reduction", 7, 3, 50, seed=42)
    b = sample_instances("equal_reduction", 7, 3, 50, seed=42)
    c = sample_instances("equal_reduction", 7, 3, 50, seed=43)
    assert a == b and a != c
    assert all(i.C[i.k] == i.B[i.k] and i.x[i.k] != field_for_order(7).one for i in a)


def test_sweep_counts_and_budget():
    res = sweep(["genfunc_forward", "reduction_cov1"], [5], 2, count=20, seed=42)
    assert res.ok
    assert {t.checked for t in res.tallies.values()} == {20}
    summary = json.dumps(res.summary())
    assert "first_failure" in summary
    with pytest.raises(CapacityError):
        plan_sweep(["reduction_split"], [5], 2, mode="exhaustive", budget=10)
    assert exhaustive_size("reduction_split", 3, 2) == 2 ** 5 * 9 * 4
    with pytest.raises(DomainError):
        plan_sweep(["nope"], [5], 2)
    with pytest.raises(DomainError):
        plan_sweep(["genfunc_forward"], [4], 2)


def test_literal_sweep_reports_first_failure():
    res = sweep(["genfunc_forward"], [5], 2, count=40, seed=42, form="literal", float_check=False)
    tally = res.tallies["genfunc_forward"]
    assert tally.failed > 0
    assert tally.first_failure["equal"] is False
    stopped = sweep(["genfunc_forward"], [5], 2, count=40, seed=42, form="literal",
                    float_check=False, fail_fast=True)
    assert stopped.stopped_early and stopped.tallies["genfunc_forward"].failed == 1


def test_parallel_sweep_matches_serial():
    serial = sweep(["reduction_split"], [5], 2, count=30, seed=7)
    parallel = sweep(["reduction_split"], [5], 2, count=30, seed=7, jobs=2)
    assert [r.to_json() for r in serial.reports] == [r.to_json() for r in parallel.reports]


def test_report_json():
    rep = verify_genfunc_forward(P(5, 1, [2, 3], [1, 1], [2, 4]), t=3)
    d = rep.to_json()
    assert "elapsed" not in d and "elapsed" in rep.to_json(timings=True)
    assert d["identity"] == "genfunc_forward" and d["extras"] == {"t": 3}
    assert d["lhs"] == d["rhs"]


def test_instance_rejects_unknown_identity():
    with pytest.raises(DomainError):
        check(Instance("nope", 5, 0, (1,), (1,), (1,)))
