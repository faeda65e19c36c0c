import csv
import io

from berge_ramsey.experiments import (
    PipelineRow,
    SweepRow,
    sweep_pipeline,
    sweep_theorem2,
    theorem2_inputs,
    to_csv,
)
from berge_ramsey.hyperstructs import Hypergraph


def test_empty_sweep_has_header():
    text = to_csv(sweep_theorem2([], 3), SweepRow)
    assert text.strip() == ",".join(SweepRow.__dataclass_fields__)


def test_sweep_t2_rows_all_free():
    rows = sweep_theorem2([2, 3], 3, 3, seeds=range(5))
    assert len(rows) == 10
    assert all(r.freeness == "free" and not r.error for r in rows)
    assert [r.q for r in rows] == ["2"] * 5 + ["3"] * 5


def test_sweep_is_byte_identical():
    a = to_csv(sweep_theorem2([2], 2, 3, seeds=[0, 1]))
    b = to_csv(sweep_theorem2([2], 2, 3, seeds=[0, 1]))
    assert a == b


def test_worker_pool_preserves_order():
    serial = to_csv(sweep_theorem2([2, 3], 3, 3, seeds=[0, 1]))
    pooled = to_csv(sweep_theorem2([2, 3], 3, 3, seeds=[0, 1], workers=2))
    assert serial == pooled


def test_row_failures_are_recorded():
    rows = sweep_theorem2([4], 3, 3, seeds=[0])
    assert rows[0].error


def test_timing_column():
    rows = sweep_theorem2([2], 3, 3, seeds=[0], timing=True)
    assert float(rows[0].wall_time) >= 0


def test_sweep_pipeline_meets_floor():
    inputs = theorem2_inputs([2, 3], 3)
    rows = sweep_pipeline(inputs, 3, seeds=[0, 1])
    assert len(rows) == 4
    for r in rows:
        assert not r.error
        assert r.indep_size >= r.alpha_floor
    text = to_csv(rows)
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert len(parsed) == 4 and parsed[0].keys() == PipelineRow.__dataclass_fields__.keys()
    assert text == to_csv(sweep_pipeline(inputs, 3, seeds=[0, 1]))


def test_sweep_pipeline_edgeless():
    rows = sweep_pipeline([("empty", Hypergraph.from_edges(3, 9, []))], 3)
    assert rows[0].indep_size == 9
