from lexalign.evaluation import EvalReport
from lexalign.plots import plot_loss_curves, plot_precision, plot_projection


def test_projection_figure_written(tmp_path):
    rows = (
        [(f"s{i}", "L1", float(i), float(-i)) for i in range(5)]
        + [(f"t{i}", "L2", float(i) + 0.1, float(-i)) for i in range(5)]
    )
    out = tmp_path / "proj.png"
    plot_projection(rows, out)
    assert out.stat().st_size > 0


def test_loss_curves_figure_written(tmp_path):
    points = [(step, 1.4 - step * 1e-3, 1.4 + step * 1e-3, 0.01) for step in range(0, 500, 50)]
    out = tmp_path / "curves.png"
    plot_loss_curves(points, out)
    assert out.stat().st_size > 0


def test_precision_figure_written(tmp_path):
    reports = [
        EvalReport("a-b", {1: 40.0, 5: 60.0, 10: 70.0}, 100, 0, "Semi-sup"),
        EvalReport("b-a", {1: 30.0, 5: 50.0, 10: 65.0}, 100, 0, "Semi-sup"),
        EvalReport("a-b", {1: 10.0, 5: 20.0, 10: 30.0}, 100, 0, "Self-sup"),
    ]
    out = tmp_path / "precision.png"
    plot_precision(reports, out)
    assert out.stat().st_size > 0
