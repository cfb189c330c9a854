"""Deterministic JSON emission.

Reports must be byte-identical across runs with the same inputs, so we
write JSON ourselves: insertion-ordered keys, rationals as "p/q"
strings, floats printed with 17 significant digits.
"""

from __future__ import annotations

import json
from fractions import Fraction

__all__ = ["format_rational", "parse_rational", "dumps"]


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    """Parse 'p/q' (or a bare integer 'p'); reject anything else."""
    if not isinstance(s, str):
        raise ValueError(f"rational must be a string, got {s!r}")
    txt = s.strip()
    num, sep, den = txt.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {s!r}") from None
    if d <= 0:
        raise ValueError(f"malformed rational {s!r}: denominator must be positive")
    return Fraction(n, d)


def _scalar(obj) -> str | None:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, Fraction):
        return json.dumps(format_rational(obj))
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format(obj, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    return None


def _is_flat(obj) -> bool:
    if isinstance(obj, dict):
        return all(_scalar(v) is not None for v in obj.values())
    if isinstance(obj, (list, tuple)):
        return all(_scalar(v) is not None for v in obj)
    return True


def _write(obj, out: list[str], indent: int) -> None:
    s = _scalar(obj)
    if s is not None:
        out.append(s)
        return
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        if _is_flat(obj) and len(obj) <= 8:
            parts = [f"{json.dumps(str(k), ensure_ascii=False)}: {_scalar(v)}" for k, v in obj.items()]
            out.append("{" + ", ".join(parts) + "}")
            return
        out.append("{\n")
        for idx, (k, v) in enumerate(obj.items()):
            out.append(inner)
            out.append(json.dumps(str(k), ensure_ascii=False))
            out.append(": ")
            _write(v, out, indent + 1)
            out.append(",\n" if idx < len(obj) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        if _is_flat(obj):
            out.append("[" + ", ".join(_scalar(v) for v in obj) + "]")
            return
        out.append("[\n")
        for idx, v in enumerate(obj):
            out.append(inner)
            _write(v, out, indent + 1)
            out.append(",\n" if idx < len(obj) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"not JSON-serializable: {type(obj).__name__}")


def dumps(obj) -> str:
    """Serialize to deterministic, human-readable JSON text."""
    out: list[str] = []
    _write(obj, out, 0)
    out.append("\n")
    return "".join(out)
