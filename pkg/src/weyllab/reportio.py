"""Output formatting: 17 significant digits in machine formats (CSV/JSON),
6 in human-readable summaries. All formatting is locale-free and
deterministic so identical configs produce byte-identical artifacts.
"""

import math


def fmt_machine(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.17g}"
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return str(x)


def fmt_human(x):
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def csv_text(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt_machine(v) for v in row))
    return "\n".join(lines) + "\n"


def json_text(obj, indent=0):
    """JSON with floats rendered at 17 significant digits."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(
            f'{pad}  "{k}": {json_text(v, indent + 1)}' for k, v in obj.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        inner = ",\n".join(f"{pad}  {json_text(v, indent + 1)}" for v in obj)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isnan(obj):
            return '"nan"'
        if math.isinf(obj):
            return '"inf"' if obj > 0 else '"-inf"'
        return f"{obj:.17g}"
    if isinstance(obj, complex):
        return f'{{"re": {obj.real:.17g}, "im": {obj.imag:.17g}}}'
    return '"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"'
