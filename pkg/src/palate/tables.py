"""Ordered (parameter -> metrics) tables emitted by the experiment harnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataError


@dataclass(frozen=True)
class ExperimentTable:
    """One experiment's results: ordered rows of (parameter value, metric map).

    Parameter values must be strictly monotone in row order and every row
    must carry the same metric names.  ``metadata`` echoes the full
    configuration (seeds, bandwidths, weights, sizes, run counts) so the
    serialized table is self-describing.
    """

    experiment_name: str
    parameter_name: str
    rows: tuple[tuple[float, dict[str, float]], ...]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        rows = tuple((float(p), dict(metrics)) for p, metrics in self.rows)
        if not rows:
            raise DataError("experiment table needs at least one row")
        params = [p for p, _ in rows]
        increasing = all(a < b for a, b in zip(params, params[1:]))
        decreasing = all(a > b for a, b in zip(params, params[1:]))
        if not (increasing or decreasing):
            raise DataError(f"parameter values must be strictly monotone, got {params}")
        names = tuple(rows[0][1].keys())
        if not names:
            raise DataError("experiment rows need at least one metric")
        for p, metrics in rows:
            if tuple(metrics.keys()) != names:
                raise DataError(f"row at parameter {p} carries metrics "
                                f"{tuple(metrics.keys())}, expected {names}")
        object.__setattr__(self, "rows", rows)

    @property
    def parameters(self) -> tuple[float, ...]:
        return tuple(p for p, _ in self.rows)

    @property
    def metric_names(self) -> tuple[str, ...]:
        return tuple(self.rows[0][1].keys())

    def column(self, name: str) -> tuple[float, ...]:
        return tuple(metrics[name] for _, metrics in self.rows)

    def value_at(self, parameter: float, name: str) -> float:
        for p, metrics in self.rows:
            if p == parameter:
                return metrics[name]
        raise KeyError(f"no row at parameter {parameter}")

    # -- serialization ------------------------------------------------------

    def to_csv(self, path) -> None:
        lines = [",".join([self.parameter_name, *self.metric_names])]
        for p, metrics in self.rows:
            cells = [f"{p:.17g}"] + [f"{metrics[name]:.17g}" for name in self.metric_names]
            lines.append(",".join(cells))
        Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")

    def to_json_dict(self) -> dict:
        return {
            "experiment_name": self.experiment_name,
            "parameter_name": self.parameter_name,
            "metric_names": list(self.metric_names),
            "rows": [{"parameter": p, "metrics": metrics} for p, metrics in self.rows],
            "metadata": self.metadata,
        }

    def to_json(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict(), indent=2) + "\n",
                              encoding="ascii")

    @staticmethod
    def from_json_dict(payload: dict) -> "ExperimentTable":
        rows = tuple((row["parameter"], dict(row["metrics"]))
                     for row in payload["rows"])
        return ExperimentTable(
            experiment_name=payload["experiment_name"],
            parameter_name=payload["parameter_name"],
            rows=rows,
            metadata=dict(payload.get("metadata", {})),
        )

    @staticmethod
    def from_json(path) -> "ExperimentTable":
        return ExperimentTable.from_json_dict(
            json.loads(Path(path).read_text(encoding="ascii")))

    def to_svg(self, path, log_x: bool = False, log_y: bool = False,
               width: int = 720, height: int = 440) -> None:
        """Write a minimal line chart: one polyline per metric."""
        import math

        left, right, top, bottom = 70, 20, 30, 45
        plot_w = width - left - right
        plot_h = height - top - bottom

        def tx(v: float) -> float:
            return math.log10(v) if log_x else v

        def ty(v: float) -> float:
            return math.log10(v) if log_y else v

        xs = [tx(p) for p in self.parameters]
        ys = [ty(v) for name in self.metric_names for v in self.column(name)]
        x_lo, x_hi = min(xs), max(xs)
        y_lo, y_hi = min(ys), max(ys)
        x_span = (x_hi - x_lo) or 1.0
        y_span = (y_hi - y_lo) or 1.0

        def px(v: float) -> float:
            return left + (tx(v) - x_lo) / x_span * plot_w

        def py(v: float) -> float:
            return top + (y_hi - ty(v)) / y_span * plot_h

        palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
            f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" '
            'fill="none" stroke="#444"/>',
            f'<text x="{width / 2:.1f}" y="{height - 8}" text-anchor="middle" '
            f'font-size="13">{self.parameter_name}'
            f'{" (log10)" if log_x else ""}</text>',
        ]
        fmt = "{:.4g}".format
        for value, anchor_x in ((self.parameters[0], left),
                                (self.parameters[-1], left + plot_w)):
            parts.append(f'<text x="{anchor_x}" y="{height - 25}" '
                         f'text-anchor="middle" font-size="11">{fmt(value)}</text>')
        lo_label = 10 ** y_lo if log_y else y_lo
        hi_label = 10 ** y_hi if log_y else y_hi
        parts.append(f'<text x="{left - 6}" y="{top + plot_h}" text-anchor="end" '
                     f'font-size="11">{fmt(lo_label)}</text>')
        parts.append(f'<text x="{left - 6}" y="{top + 10}" text-anchor="end" '
                     f'font-size="11">{fmt(hi_label)}</text>')
        for index, name in enumerate(self.metric_names):
            color = palette[index % len(palette)]
            points = " ".join(f"{px(p):.2f},{py(v):.2f}"
                              for p, v in zip(self.parameters, self.column(name)))
            parts.append(f'<polyline points="{points}" fill="none" '
                         f'stroke="{color}" stroke-width="1.5"/>')
            parts.append(f'<text x="{left + 8}" y="{top + 16 + 15 * index}" '
                         f'font-size="12" fill="{color}">{name}</text>')
        parts.append("</svg>")
        Path(path).write_text("\n".join(parts) + "\n", encoding="ascii")
