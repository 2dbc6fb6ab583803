"""Escaped line format for 3-gram files.

Pool and reference files store one 3-gram per line. Printable characters
are written literally; backslash, newline, and tab use two-character
escapes, and all other non-printables are written as ``\\xHH`` escapes of
their UTF-8 bytes. A line therefore decodes to exactly 3 characters.
"""

from __future__ import annotations

from .text import NGRAM_SIZE

_ESCAPES = {"\\": "\\\\", "\n": "\\n", "\t": "\\t"}
_UNESCAPES = {"n": 0x0A, "t": 0x09, "\\": 0x5C}


def escape_gram(gram: str) -> str:
    out: list[str] = []
    for ch in gram:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ch.isprintable():
            out.append(ch)
        else:
            out.extend(f"\\x{byte:02x}" for byte in ch.encode("utf-8"))
    return "".join(out)


def unescape_gram(line: str) -> str:
    buf = bytearray()
    i = 0
    while i < len(line):
        ch = line[i]
        if ch != "\\":
            buf.extend(ch.encode("utf-8"))
            i += 1
            continue
        if i + 1 >= len(line):
            raise ValueError(f"dangling escape at end of line {line!r}")
        nxt = line[i + 1]
        if nxt in _UNESCAPES:
            buf.append(_UNESCAPES[nxt])
            i += 2
        elif nxt == "x":
            hex_digits = line[i + 2 : i + 4]
            if len(hex_digits) != 2:
                raise ValueError(f"truncated \\x escape in line {line!r}")
            try:
                buf.append(int(hex_digits, 16))
            except ValueError:
                raise ValueError(f"bad \\x escape {hex_digits!r} in line {line!r}") from None
            i += 4
        else:
            raise ValueError(f"unknown escape \\{nxt} in line {line!r}")
    try:
        return buf.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ValueError(f"line {line!r} does not decode to UTF-8 text: {exc}") from None


def parse_gram_line(line: str) -> str:
    """Unescape one line and check it is exactly one 3-gram."""
    gram = unescape_gram(line)
    if len(gram) != NGRAM_SIZE:
        raise ValueError(f"line {line!r} decodes to {len(gram)} characters, expected {NGRAM_SIZE}")
    return gram
