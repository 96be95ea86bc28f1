"""Right-angle-crossing drawings of low-degree graphs with exact coordinates."""

from .decompose import augment_and_decompose, oddness_decomposition, three_edge_color
from .drawing import Drawing
from .graph import EdgeColoring, Graph, GraphError
from .io import emit_json, emit_svg, format_graph, generate, parse_graph, parse_json
from .oddness import draw_oddness2, draw_oddness_k
from .onebend_diagonal import draw_1bend_diagonal
from .onebend_split import draw_1bend_deg4
from .rac3 import draw_rac3, rac3_constraints, rac3_layout
from .twobend import draw_2bend_deg7
from .verify import Constraints, VerificationReport, verify

__all__ = [
    "Constraints",
    "Drawing",
    "EdgeColoring",
    "Graph",
    "GraphError",
    "VerificationReport",
    "augment_and_decompose",
    "draw_1bend_deg4",
    "draw_1bend_diagonal",
    "draw_2bend_deg7",
    "draw_oddness2",
    "draw_oddness_k",
    "draw_rac3",
    "emit_json",
    "emit_svg",
    "format_graph",
    "generate",
    "oddness_decomposition",
    "parse_graph",
    "parse_json",
    "rac3_constraints",
    "rac3_layout",
    "three_edge_color",
    "verify",
]
