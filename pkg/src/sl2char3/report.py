"""Report rendering: human-readable summary of a verification report,
plus (when an output directory is given) a CSV of the per-pair records and
matplotlib figures for row coverage and field-degree usage.
"""

import csv
import json
import os

from . import oracle


def summarize(report):
    """Multi-line text summary: totals, row coverage matrix, mismatches."""
    lines = []
    n = report["pair_count"]
    lines.append(f"pairs: {n}   base field: GF(3^{report['base_field']})"
                 f"   scope: {report.get('scope') or '-'}")
    lines.append(f"mismatches: {report['mismatch_count']}"
                 + (f" (documented literal: "
                    f"{report['documented_literal_mismatches']})"
                    if report.get("paper_literal") else ""))
    if "lemma_failures" in report:
        lines.append(f"cube-scalar identity failures: {report['lemma_failures']}")
    cov = report.get("row_coverage", {})
    lines.append("")
    lines.append("row coverage:")
    known = [(r["table"], r["path"]) for r in oracle.table_dump()]
    seen = set()
    for table, path in known:
        key = f"{table}:{path}"
        seen.add(key)
        count = cov.get(key, 0)
        mark = f"{count:6d}" if count else "     -"
        lines.append(f"  {mark}  {key}")
    for key in sorted(cov):
        if key not in seen:
            lines.append(f"  {cov[key]:6d}  {key}  (unlisted)")
    uncovered = [f"{t}:{p}" for t, p in known if cov.get(f"{t}:{p}", 0) == 0]
    if uncovered:
        lines.append("")
        lines.append(f"uncovered rows ({len(uncovered)}): conditions not "
                     "satisfiable in this sweep's field or scope")
    mismatches = [r for r in report["pairs"] if not r["match"]]
    if mismatches:
        lines.append("")
        lines.append("mismatch diffs:")
        for r in mismatches[:50]:
            lines.append(f"  {r['left']} (x) {r['right']}   row {r['case']}"
                         + ("   [documented literal]"
                            if r.get("literal_documented") else ""))
            lines.append(f"    engine: {json.dumps(r.get('engine', r.get('engine_error')), sort_keys=True)}")
            lines.append(f"    oracle: {json.dumps(r.get('oracle', r.get('oracle_error')), sort_keys=True)}")
        if len(mismatches) > 50:
            lines.append(f"  ... and {len(mismatches) - 50} more")
    timed = [r["wall_ms"] for r in report["pairs"] if "wall_ms" in r]
    if timed:
        lines.append("")
        lines.append(f"timing: total {sum(timed)/1000:.1f}s,"
                     f" mean {sum(timed)/len(timed):.1f} ms/pair,"
                     f" max {max(timed):.1f} ms")
    return "\n".join(lines)


def write_outputs(report, out_dir):
    """CSV of per-pair records plus PNG figures, written into out_dir."""
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "pairs.csv")
    with open(csv_path, "w", newline="") as f:
        w = csv.writer(f)
        header = ["left", "right", "case", "field", "match", "lemma_ok"]
        if any("wall_ms" in r for r in report["pairs"]):
            header.append("wall_ms")
        w.writerow(header)
        for r in report["pairs"]:
            row = [r["left"], r["right"], r.get("case"),
                   r.get("field"), r["match"], r.get("lemma_ok", "")]
            if "wall_ms" in header:
                row.append(r.get("wall_ms", ""))
            w.writerow(row)
    figures = _write_figures(report, out_dir)
    return [csv_path] + figures


def _write_figures(report, out_dir):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    paths = []
    cov = report.get("row_coverage", {})
    if cov:
        keys = list(cov)
        counts = [cov[k] for k in keys]
        colors = []
        bad_rows = {r["case"] for r in report["pairs"] if not r["match"]}
        for k in keys:
            colors.append("#c0392b" if k in bad_rows else "#2c7fb8")
        fig, ax = plt.subplots(figsize=(9, max(3, 0.28 * len(keys))))
        ax.barh(range(len(keys)), counts, color=colors)
        ax.set_yticks(range(len(keys)))
        ax.set_yticklabels(keys, fontsize=7)
        ax.invert_yaxis()
        ax.set_xlabel("pairs")
        ax.set_title("table-row coverage"
                     + (" (red = rows with mismatches)" if bad_rows else ""))
        fig.tight_layout()
        p = os.path.join(out_dir, "row_coverage.png")
        fig.savefig(p, dpi=130)
        plt.close(fig)
        paths.append(p)

    degs = {}
    for r in report["pairs"]:
        k = r.get("field")
        if k:
            degs[k] = degs.get(k, 0) + 1
    if degs:
        fig, ax = plt.subplots(figsize=(4.5, 3))
        items = sorted(degs.items())
        ax.bar([f"GF(3^{k})" for k, _ in items], [v for _, v in items],
               color="#2c7fb8")
        ax.set_ylabel("pairs")
        ax.set_title("splitting fields used")
        fig.tight_layout()
        p = os.path.join(out_dir, "field_degrees.png")
        fig.savefig(p, dpi=130)
        plt.close(fig)
        paths.append(p)

    timed = [r["wall_ms"] for r in report["pairs"] if "wall_ms" in r]
    if timed:
        fig, ax = plt.subplots(figsize=(4.5, 3))
        ax.hist(timed, bins=40, color="#2c7fb8")
        ax.set_xlabel("ms per pair")
        ax.set_ylabel("pairs")
        ax.set_title("per-pair wall time")
        fig.tight_layout()
        p = os.path.join(out_dir, "timing.png")
        fig.savefig(p, dpi=130)
        plt.close(fig)
        paths.append(p)
    return paths
