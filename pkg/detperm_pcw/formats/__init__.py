from .alist import AlistConverter, parse_alist, write_alist
from .dense import DenseConverter, parse_dense, write_dense
from .table import (
    read_records,
    render_cone_report,
    write_cone_report,
    write_gaussian,
    write_gnuplot,
    write_histogram,
    write_records,
)

__all__ = [
    "AlistConverter", "parse_alist", "write_alist",
    "DenseConverter", "parse_dense", "write_dense",
    "read_records", "render_cone_report", "write_cone_report", "write_gaussian",
    "write_gnuplot", "write_histogram", "write_records",
]
