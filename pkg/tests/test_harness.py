"""Rigid-edge census, cycle completion, experiments and the lemma suite."""

from fractions import Fraction

import pytest

from exactrips.digits import BinaryString
from exactrips.harness import (
    DisconnectionError,
    assert_rigid_free,
    complete_to_cycle,
    default_sheets,
    find_diagonal_scale_edges,
    find_rigid_edges,
    minimal_config,
    run_lemma_suite,
    theorem_experiment,
)
from exactrips.homology import betti01, betti_bruteforce, cycle_is_closed
from exactrips.rips import build_complex
from exactrips.space import Cloud, CloudConfig, LabeledPoint4, build_cloud

WINDOW_LO = Fraction(118097, 118098)
INTERIOR = Fraction(236195, 236196)


def _minimal_complex(n, a, blocks=8):
    cloud = build_cloud(minimal_config(n, a, blocks))
    return build_complex(cloud, a)


def test_default_sheets_distinct():
    for n in (1, 2, 3, 7, 16):
        sheets = default_sheets(n)
        assert len(sheets) == n
        assert len({s.digits for s in sheets}) == n


def test_find_rigid_edges_minimal_n4():
    cx = _minimal_complex(4, Fraction(1))
    rigid = find_rigid_edges(cx)
    assert len(rigid) == 4
    assert all(r.x_fiber == 0 for r in rigid)
    for r in rigid:
        s = cx.cloud.points[r.sheet_vertex]
        p = cx.cloud.points[r.partner_vertex]
        assert s.kind == "sheet" and p.kind == "cube1"
        assert p.coords[1:] == s.coords[1:]


def test_find_rigid_edges_none_without_partners():
    cfg = CloudConfig(
        sheets=default_sheets(2),
        scale=Fraction(1),
        x_values=(Fraction(1, 3),),
        include_partners=False,
        cube_grid=1,
    )
    cx = build_complex(build_cloud(cfg), Fraction(1))
    assert find_rigid_edges(cx) == []


def test_find_rigid_edges_all_twos_fiber():
    cx = _minimal_complex(2, WINDOW_LO)
    rigid = find_rigid_edges(cx)
    assert len(rigid) == 2
    assert all(r.x_fiber == 1 for r in rigid)


def test_diagonal_scale_edge_reported_not_rigid():
    # Two sheet points and one slab point at the scale distance from the
    # second sheet point diagonally.
    y = BinaryString((0,))
    sheet_a = LabeledPoint4((Fraction(0),) * 4, "sheet", Fraction(0), y)
    # diagonal endpoint: gap (3/5, 4/5, 0, 0) has length exactly 1
    diag = LabeledPoint4(
        (Fraction(3, 5), Fraction(4, 5), Fraction(0), Fraction(0)), "cube1"
    )
    cloud = Cloud((sheet_a, diag), None)
    cx = build_complex(cloud, Fraction(1))
    assert find_rigid_edges(cx) == []
    assert find_diagonal_scale_edges(cx) == [0]


def test_assert_rigid_free_minimal():
    for a in (Fraction(1), INTERIOR, WINDOW_LO):
        cx = _minimal_complex(3, a)
        report = assert_rigid_free(cx, find_rigid_edges(cx))
        assert report.ok and report.checked == 3


def test_assert_rigid_free_detects_violation():
    y = BinaryString((0,))
    sheet = LabeledPoint4((Fraction(0),) * 4, "sheet", Fraction(0), y)
    partner = LabeledPoint4(
        (Fraction(1), Fraction(0), Fraction(0), Fraction(0)), "cube1"
    )
    intruder = LabeledPoint4(
        (Fraction(1, 2), Fraction(0), Fraction(0), Fraction(0)),
        "sheet",
        Fraction(1, 2),
        y,
    )
    cloud = Cloud((sheet, partner, intruder), None)
    cx = build_complex(cloud, Fraction(1))
    rigid = find_rigid_edges(cx)
    assert len(rigid) == 1
    report = assert_rigid_free(cx, rigid)
    assert not report.ok
    assert report.triangle_violations and report.witness_violations


def test_complete_to_cycle_minimal_is_a_square():
    cx = _minimal_complex(2, Fraction(1))
    e1, e2 = find_rigid_edges(cx)
    cycle = complete_to_cycle(e1, e2, cx)
    assert cycle.edge_indices == (0, 1, 2, 3)
    assert cycle_is_closed(cx, cycle)


def test_complete_to_cycle_identity_rejected():
    cx = _minimal_complex(2, Fraction(1))
    e1, _ = find_rigid_edges(cx)
    with pytest.raises(ValueError):
        complete_to_cycle(e1, e1, cx)


def test_complete_to_cycle_closed_on_bigger_configs():
    cx = _minimal_complex(6, INTERIOR)
    rigid = find_rigid_edges(cx)
    for k in range(1, 6):
        cycle = complete_to_cycle(rigid[0], rigid[k], cx)
        assert cycle_is_closed(cx, cycle)
        assert rigid[0].edge_index in cycle.edge_indices
        assert rigid[k].edge_index in cycle.edge_indices


def test_complete_to_cycle_disconnection():
    # Hand-built cloud: two rigid pairs in columns too far apart for any
    # non-rigid connecting path at scale 1.
    y0, y1 = BinaryString((0,)), BinaryString((1,))
    far = Fraction(3)
    pts = (
        LabeledPoint4((Fraction(0), Fraction(0), Fraction(0), Fraction(0)), "sheet", Fraction(0), y0),
        LabeledPoint4((Fraction(1), Fraction(0), Fraction(0), Fraction(0)), "cube1"),
        LabeledPoint4((Fraction(0), far, far, far), "sheet", Fraction(0), y1),
        LabeledPoint4((Fraction(1), far, far, far), "cube1"),
    )
    cloud = Cloud(pts, None)
    cx = build_complex(cloud, Fraction(1))
    rigid = find_rigid_edges(cx)
    assert len(rigid) == 2
    with pytest.raises(DisconnectionError):
        complete_to_cycle(rigid[0], rigid[1], cx)


def test_theorem_experiment_minimal_betti_law():
    report = theorem_experiment([1, 2, 3, 5, 8], [Fraction(1)])
    assert report.all_pass
    by_n = {r.n: r for r in report.rows}
    assert [by_n[n].betti1 for n in (2, 3, 5, 8)] == [1, 2, 4, 7]
    assert by_n[1].betti1 == 0
    # brute-force cross-check where the oracle applies
    for n in (2, 3, 5):
        cloud = build_cloud(minimal_config(n, Fraction(1)))
        assert betti_bruteforce(cloud, Fraction(1)) == (1, n - 1)


def test_theorem_experiment_full_config_lower_bound():
    report = theorem_experiment(
        [4], [INTERIOR], cube_grid=2, include_cube0=True
    )
    row = report.rows[0]
    assert row.verdict
    assert row.betti1 >= 3
    assert row.lower_bound == 3
    assert row.rigid_count == 4 and row.rigid_free


def test_theorem_experiment_rejects_unsorted_counts():
    with pytest.raises(ValueError):
        theorem_experiment([3, 2], [Fraction(1)])


def test_window_scale_grid_rigid_and_betti():
    # >= 5 scales across the window with assorted fiber values.
    lo = WINDOW_LO
    scales = [lo + (1 - lo) * Fraction(k, 5) for k in range(6)]
    report = theorem_experiment([3], scales)
    assert report.all_pass
    for row in report.rows:
        assert row.rigid_count == 3 and row.rigid_free
        assert row.betti1 == 2 and row.lower_bound == 2


def test_single_cycle_has_nonzero_class():
    from exactrips.homology import rigid_rank_lower_bound

    cx = _minimal_complex(2, Fraction(1))
    rigid = find_rigid_edges(cx)
    cycle = complete_to_cycle(rigid[0], rigid[1], cx)
    assert (
        rigid_rank_lower_bound(cx, [r.edge_index for r in rigid], [cycle]) == 1
    )


def test_lemma_suite_passes_and_is_deterministic():
    rep1 = run_lemma_suite(seed=7, samples=200, blocks=6)
    rep2 = run_lemma_suite(seed=7, samples=200, blocks=6)
    assert rep1.passed
    assert rep1 == rep2
    assert rep1.to_json() == rep2.to_json()
    assert rep1.parabola_checks == 128
    assert rep1.equivalence_c2 >= Fraction(1, 81)
    assert rep1.equivalence_c1 <= 1


def test_lemma_suite_rejects_zero_samples():
    with pytest.raises(ValueError):
        run_lemma_suite(seed=1, samples=0, blocks=4)


def test_close_expanding_negative_control():
    from exactrips.embedding import check_close_expanding

    ok, cex = check_close_expanding(
        [("p", "q", Fraction(1), Fraction(0))], Fraction(1, 243)
    )
    assert not ok and cex is not None


def test_experiment_report_csv_shape():
    report = theorem_experiment([2], [Fraction(1)])
    text = report.to_csv_text()
    lines = text.strip().split("\n")
    assert lines[0] == (
        "n,scale,vertices,edges,triangles,betti0,betti1,"
        "rigid_count,rigid_free,lower_bound,verdict"
    )
    assert lines[1] == "2,1/1,4,4,0,1,1,2,true,1,pass"


def test_experiment_deterministic():
    kwargs = dict(sheet_counts=[2, 3], scales=[Fraction(1), INTERIOR])
    assert theorem_experiment(**kwargs) == theorem_experiment(**kwargs)
    assert (
        theorem_experiment(**kwargs).to_csv_text()
        == theorem_experiment(**kwargs).to_csv_text()
    )
