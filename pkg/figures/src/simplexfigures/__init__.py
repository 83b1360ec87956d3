"""Figure rendering for magic-simplex CSV/JSON exports.

This package is deliberately decoupled from the numerical library: its
only inputs are the point-cloud CSV files and estimate-report JSON files
written by the `magicsimplex` command-line tool.
"""

from .render import FigureSpec, render_atoms, render_cloud

__all__ = ["FigureSpec", "render_atoms", "render_cloud"]

__version__ = "0.1.0"
