"""Result files: episode tables, sweep summaries, figure series and t-test tables.

Every file is written to a temporary sibling and renamed into place, so a
reader never sees a half-written artifact.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import asdict
from pathlib import Path
from typing import Any, Iterable, Sequence

from .appraisal import Emotion
from .experiment import AgentKind, RunSummary, SweepAggregate, SweepTable, aggregate
from .stats import paired_t_test

EPISODE_HEADER = ("episode", "steps", "decisions", "random_decisions", "joy", "sadness",
                  "anger", "fear", "norm", "exp1", "act", "truncated")
SUMMARY_HEADER = ("agent", "epsilon", "run", "first_optimal_episode",
                  "total_steps_before_optimal", "mean_steps_per_episode")
FIG3_HEADER = ("epsilon", "mean_steps_standard", "mean_steps_affective")
FIG4_HEADER = ("epsilon", "total_standard", "total_affective")
FIG5_HEADER = ("episode", "joy_frac", "sadness_frac", "anger_frac", "fear_frac")
FIG6_HEADER = ("episode", "equivalent_epsilon")


def format_value(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return repr(v)  # shortest round-trip form
    return str(v)


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(format_value(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def json_text(obj: Any) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def write_table(out_dir: Path, stem: str, header: Sequence[str],
                rows: Sequence[Sequence[Any]], fmt: str = "csv") -> Path:
    """Write ``rows`` as ``stem.csv`` or, for ``fmt="json"``, a list of objects."""
    if fmt == "csv":
        path = Path(out_dir) / f"{stem}.csv"
        atomic_write(path, csv_text(header, rows))
    elif fmt == "json":
        path = Path(out_dir) / f"{stem}.json"
        atomic_write(path, json_text([dict(zip(header, row)) for row in rows]))
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return path


def episode_rows(run: RunSummary) -> list[tuple]:
    return [(e.index, e.steps, e.decisions, e.random_decisions, *e.emotion_tally,
             e.norm, e.exp1_final, e.act_final, e.truncated) for e in run.episodes]


def summary_rows(table: SweepTable) -> list[tuple]:
    eps = table.config.epsilons
    rows = []
    for (kind, ei, r), run in sorted(table.cells.items(),
                                     key=lambda kv: (kv[0][0].ordinal, kv[0][1], kv[0][2])):
        rows.append((kind.value, eps[ei], r + 1, run.first_optimal_episode,
                     run.total_steps_before_optimal, run.mean_steps_per_episode))
    return rows


def comparison_tables(agg: SweepAggregate) -> dict[str, dict]:
    """Paired t-tests across the epsilon values, standard vs affective."""
    std, aff = AgentKind.STANDARD, AgentKind.AFFECTIVE
    return {
        "steps_per_episode": paired_t_test(agg.mean_steps[std], agg.mean_steps[aff]).to_dict(),
        "total_steps_before_optimal": paired_t_test(
            agg.mean_total_before_optimal[std], agg.mean_total_before_optimal[aff]).to_dict(),
    }


def write_sweep(table: SweepTable, out_dir: Path, fmt: str = "csv") -> list[Path]:
    out_dir = Path(out_dir)
    agg = aggregate(table)
    std, aff = AgentKind.STANDARD, AgentKind.AFFECTIVE
    eps = agg.epsilons
    paths = [
        write_table(out_dir, "sweep_summary", SUMMARY_HEADER, summary_rows(table), fmt),
        write_table(out_dir, "fig3", FIG3_HEADER,
                    list(zip(eps, agg.mean_steps[std], agg.mean_steps[aff])), fmt),
        write_table(out_dir, "fig4", FIG4_HEADER,
                    list(zip(eps, agg.mean_total_before_optimal[std],
                             agg.mean_total_before_optimal[aff])), fmt),
        write_table(out_dir, "fig5", FIG5_HEADER,
                    [(i, *f) for i, f in enumerate(agg.emotion_fractions, start=1)], fmt),
        write_table(out_dir, "fig6", FIG6_HEADER,
                    list(enumerate(agg.equivalent_epsilon, start=1)), fmt),
    ]
    tables = comparison_tables(agg)
    tables["summary"] = {
        "mean_first_optimal_episode": {k.value: v for k, v in agg.mean_first_optimal_episode.items()},
        "truncated_episodes": {k.value: v for k, v in agg.truncated_episodes.items()},
        "fear_share": agg.emotion_share(Emotion.FEAR),
    }
    tables["config"] = asdict(table.config)
    path = out_dir / "tables.json"
    atomic_write(path, json_text(tables))
    paths.append(path)
    return paths
