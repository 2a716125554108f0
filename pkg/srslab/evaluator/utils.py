# -*- encoding: utf-8 -*-
# @Time    :   2026/10/16
# @Author  :   SRSLab Team

# UPDATE
# @Time    :   2026/10/18
# @Author  :   SRSLab Team

import re
import shutil
from collections import OrderedDict
from typing import Tuple, Union

import pandas as pd

from .metrics import Metric


def _line_width():
    return shutil.get_terminal_size((88, 24)).columns


def float_formatter(f: Union[float, int]) -> str:
    """Short cell text: blank for nan, counts as is, four digits for scores."""
    if f != f:
        return ""
    if isinstance(f, int) or f >= 1000:
        return f"{f:.0f}"
    text = f"{f:.4f}" if abs(f) < 1 else f"{f:.4g}"
    return text.replace("0.", ".", 1) if text.startswith(("0.", "-0.")) else text


def _report_sort_key(report_key: str) -> Tuple[str, str]:
    """
    Sorting name for reports: group first, then metric.

    ``alpha=0.5/f1`` -> ``('alpha=0.5', 'f1')``; a bare ``f1`` goes to the ``all`` group.
    """
    fields = report_key.split("/")
    main_key = fields.pop(-1)
    sub_key = '/'.join(fields)
    return (sub_key or 'all', main_key)


def nice_report(report) -> str:
    """
    Render a report as a table, one row per group and one column per metric.

    .. code-block:

                     f1  precision  recall
       alpha=0     .6000     1.000   .4286
       alpha=0.5   .9000     1.000   .8182
    """
    if not report:
        return ""

    output = OrderedDict()
    for k in sorted(report.keys(), key=_report_sort_key):
        v = report[k]
        if isinstance(v, Metric):
            v = v.value()
        output[_report_sort_key(k)] = v

    df = pd.DataFrame([output])
    df.columns = pd.MultiIndex.from_tuples(df.columns)
    df = df.stack().transpose().droplevel(0, axis=1)
    result = "   " + df.to_string(
        na_rep="",
        line_width=_line_width() - 3,
        float_format=float_formatter,
        index=df.shape[0] > 1,
    ).replace("\n\n", "\n").replace("\n", "\n   ")
    return re.sub(r"\s+$", "", result)
