"""3D scatter clouds and atom bar charts from the exporter's file formats."""

import csv
import json
from dataclasses import dataclass, field

import matplotlib
import numpy as np

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

#: paper color convention, with separable gray for contrast
LABEL_COLORS = {
    "bound": "tab:green",
    "free": "tab:red",
    "separable": "0.6",
    "pocu-candidate": "tab:orange",
}

REQUIRED_COLUMNS = ("index", "Q1", "Q2", "Q3", "s", "p", "feasible", "ppt",
                    "mub", "choi", "ccnr", "P", "S", "label")

#: the eight atom combinations, publication order (external report schema)
ATOM_COMBOS = (
    "P && S && PPT", "!P && S && PPT", "P && !S && PPT", "P && S && !PPT",
    "!P && !S && PPT", "!P && S && !PPT", "P && !S && !PPT", "!P && !S && !PPT",
)


class MissingColumnError(ValueError):
    """Input CSV lacks a column of the point-cloud schema."""


class EmptyInputError(ValueError):
    """Input holds no data rows."""


class SchemaMismatchError(ValueError):
    """Atom report does not contain the expected eight atom rows."""


@dataclass
class FigureSpec:
    """What to render and where to put it."""

    input_path: str
    output_path: str
    color_by: str = "label"
    axes: tuple = ("Q1", "Q2", "Q3")
    title: str | None = None
    log_scale: bool = False
    point_size: float = 2.0


def read_cloud_csv(path):
    """Columns of a point-cloud CSV as a dict of numpy arrays."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise MissingColumnError(f"{path}: missing columns {missing}")
        rows = list(reader)
    if not rows:
        raise EmptyInputError(f"{path}: no data rows")
    out = {}
    for col in header:
        vals = [r[col] for r in rows]
        if col == "label":
            out[col] = np.array(vals, dtype=object)
        else:
            out[col] = np.array([float(v) if v != "" else np.nan for v in vals])
    return out


def _colors_for(data, color_by):
    if color_by == "label":
        return [LABEL_COLORS.get(lab, "tab:blue") for lab in data["label"]], {
            lab: LABEL_COLORS.get(lab, "tab:blue")
            for lab in dict.fromkeys(data["label"])}
    if color_by not in data:
        raise MissingColumnError(f"no column {color_by!r} to color by")
    flags = data[color_by] > 0.5
    colors = np.where(flags, "tab:green", "tab:red")
    return list(colors), {f"{color_by}=true": "tab:green",
                          f"{color_by}=false": "tab:red"}


def render_cloud(spec: FigureSpec) -> str:
    """3D scatter of a labeled point cloud; returns the output path."""
    data = read_cloud_csv(spec.input_path)
    for ax_name in spec.axes:
        if ax_name not in data:
            raise MissingColumnError(f"no column {ax_name!r} for axis")
    colors, legend = _colors_for(data, spec.color_by)

    fig = plt.figure(figsize=(7, 6))
    ax = fig.add_subplot(projection="3d")
    x, y, z = (data[a] for a in spec.axes)
    ax.scatter(x, y, z, c=colors, s=spec.point_size, depthshade=False)
    ax.set_xlabel(spec.axes[0])
    ax.set_ylabel(spec.axes[1])
    ax.set_zlabel(spec.axes[2])
    handles = [plt.Line2D([], [], marker="o", linestyle="", color=c, label=lab)
               for lab, c in legend.items()]
    ax.legend(handles=handles, loc="upper right", fontsize=8)
    if spec.title:
        ax.set_title(spec.title)
    fig.savefig(spec.output_path, dpi=150)
    plt.close(fig)
    return spec.output_path


def _atom_series(report):
    """Extract named series of eight atom values from a report dict."""
    series = {}
    atoms = report.get("atoms")
    if atoms is not None:
        if set(atoms) != set(ATOM_COMBOS):
            raise SchemaMismatchError(
                f"'atoms' must hold exactly the eight atom rows, got {len(atoms)}")
        series["estimate"] = [atoms[c] for c in ATOM_COMBOS]
    exact = {}
    for row in report.get("comparisons", []):
        if str(row.get("name", "")).startswith("atom_") and row.get("combo") in ATOM_COMBOS:
            exact[row["combo"]] = row["exact"]
    if len(exact) == len(ATOM_COMBOS):
        series["exact"] = [exact[c] for c in ATOM_COMBOS]
    if "atoms_exact" in report:
        vals = report["atoms_exact"]
        if set(vals) != set(ATOM_COMBOS):
            raise SchemaMismatchError("'atoms_exact' must hold the eight atom rows")
        series["exact"] = [vals[c] for c in ATOM_COMBOS]
    if not series:
        raise SchemaMismatchError("report holds neither 'atoms' nor 'atoms_exact'")
    return series


def render_atoms(spec: FigureSpec) -> str:
    """Grouped bar chart of atom probabilities, estimate next to exact."""
    with open(spec.input_path) as fh:
        report = json.load(fh)
    series = _atom_series(report)

    fig, ax = plt.subplots(figsize=(9, 5))
    n = len(ATOM_COMBOS)
    width = 0.8 / len(series)
    positions = np.arange(n)
    for k, (name, values) in enumerate(sorted(series.items())):
        ax.bar(positions + k * width, values, width, label=name)
    ax.set_xticks(positions + 0.4 - width / 2)
    ax.set_xticklabels([c.replace(" && ", "\n") for c in ATOM_COMBOS], fontsize=7)
    ax.set_ylabel("probability")
    if spec.log_scale:
        ax.set_yscale("log")
    ax.legend()
    if spec.title:
        ax.set_title(spec.title)
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=150)
    plt.close(fig)
    return spec.output_path
