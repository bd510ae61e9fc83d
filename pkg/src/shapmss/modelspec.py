"""Plain-text model descriptions.

A document holds exactly one section. Blank lines and ``#`` comments are
ignored; a value whose brackets are left open continues on the next lines.

Pattern model::

    [pattern]
    name = fig1_m           # optional
    "very good" => 0.9      # rules, highest priority first
    "nice" => 0.7
    default = 0             # optional, defaults to 0

Aspect model::

    [aspect]
    aspects = [taste|Tastes|tastes, smell|Smell|smells]
    sentiments = { amazing: 1, bad: -0.6 }
    head = overall          # or aspect:<name>

Each ``aspects`` entry lists the surface forms of one aspect; the first form
is the aspect's name.

Numeric game::

    [numeric]
    kind = max              # or min
    arity = 3
"""

from __future__ import annotations

import re
from pathlib import Path

from .models import (
    AspectSentimentModel,
    ModelSpecError,
    ModelValidationError,
    NumericGame,
    PatternPriorityModel,
)

_SECTION = re.compile(r"^\[(\w+)\]$")
_RULE = re.compile(r'^"([^"]*)"\s*=>\s*(\S+)$')
_KEY = re.compile(r"^([A-Za-z_]\w*)\s*=\s*(.*)$")
_WORD = re.compile(r"^[^\s,:{}\[\]|\"#]+$")

_KEYS = {
    "pattern": {"name", "default"},
    "aspect": {"name", "aspects", "sentiments", "head"},
    "numeric": {"name", "kind", "arity"},
}
_REQUIRED = {
    "pattern": set(),
    "aspect": {"aspects", "sentiments"},
    "numeric": {"kind", "arity"},
}


def _strip_comment(line: str) -> str:
    out = []
    quoted = False
    for ch in line:
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            break
        out.append(ch)
    return "".join(out).strip()


def _logical_lines(text: str):
    """Yield (first line number, joined content), merging open brackets."""
    buf, start, depth = [], 0, 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line and not buf:
            continue
        if not buf:
            start = lineno
        buf.append(line)
        depth += line.count("[") + line.count("{") - line.count("]") - line.count("}")
        if _SECTION.match(line) and len(buf) == 1:
            depth = 0
        if depth <= 0:
            yield start, " ".join(buf).strip()
            buf, depth = [], 0
    if buf:
        raise ModelSpecError("unbalanced bracket", line=start)


def _number(text: str, line: int, field: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ModelSpecError(f"expected a number, got {text!r}", line, field) from None


def _word(text: str, line: int, field: str) -> str:
    text = text.strip()
    if not _WORD.match(text):
        raise ModelSpecError(f"bad word {text!r}", line, field)
    return text


def _parse_aspects(value: str, line: int) -> dict[str, str]:
    if not (value.startswith("[") and value.endswith("]")):
        raise ModelSpecError("expected [form|form, ...]", line, "aspects")
    mapping: dict[str, str] = {}
    body = value[1:-1].strip()
    if not body:
        raise ModelSpecError("empty aspect list", line, "aspects")
    for entry in body.split(","):
        forms = [_word(f, line, "aspects") for f in entry.split("|")]
        for form in forms:
            if form in mapping:
                raise ModelSpecError(f"aspect form {form!r} listed twice", line, "aspects")
            mapping[form] = forms[0]
    return mapping


def _parse_sentiments(value: str, line: int) -> dict[str, float]:
    if not (value.startswith("{") and value.endswith("}")):
        raise ModelSpecError("expected { word: score, ... }", line, "sentiments")
    out: dict[str, float] = {}
    body = value[1:-1].strip()
    if not body:
        return out
    for entry in body.split(","):
        word, sep, score = entry.partition(":")
        if not sep:
            raise ModelSpecError(f"missing ':' in {entry.strip()!r}", line, "sentiments")
        word = _word(word, line, "sentiments")
        if word in out:
            raise ModelSpecError(f"sentiment {word!r} listed twice", line, "sentiments")
        out[word] = _number(score.strip(), line, "sentiments")
    return out


def parse_model(text: str):
    """Build a model from a description document.

    Raises :class:`ModelSpecError` (with the offending line and field) on
    malformed input and :class:`ModelValidationError` on out-of-range values.
    """
    section = None
    section_line = None
    values: dict[str, tuple[int, str]] = {}
    rules: list[tuple[tuple[str, ...], float]] = []

    for lineno, line in _logical_lines(text):
        m = _SECTION.match(line)
        if m:
            if section is not None:
                raise ModelSpecError("only one section per document", lineno)
            section = m.group(1)
            section_line = lineno
            if section not in _KEYS:
                raise ModelSpecError(f"unknown section [{section}]", lineno)
            continue
        if section is None:
            raise ModelSpecError("content before the first [section]", lineno)
        m = _RULE.match(line)
        if m:
            if section != "pattern":
                raise ModelSpecError("'=>' rules only belong in [pattern]", lineno)
            tokens = tuple(m.group(1).split())
            if not tokens:
                raise ModelSpecError("empty pattern", lineno, "rule")
            rules.append((tokens, _number(m.group(2), lineno, "rule")))
            continue
        m = _KEY.match(line)
        if not m:
            raise ModelSpecError(f"cannot parse {line!r}", lineno)
        key, value = m.group(1), m.group(2).strip()
        if key not in _KEYS[section]:
            raise ModelSpecError(f"unknown key in [{section}]", lineno, key)
        if key in values:
            raise ModelSpecError("key given twice", lineno, key)
        values[key] = (lineno, value)

    if section is None:
        raise ModelSpecError("empty document")
    missing = _REQUIRED[section] - set(values)
    if missing:
        raise ModelSpecError(f"missing {sorted(missing)} in [{section}]", section_line)

    name = values.get("name", (0, section))[1]
    try:
        if section == "pattern":
            if not rules:
                raise ModelValidationError("no rules", section_line, "rule")
            default = 0.0
            if "default" in values:
                lineno, v = values["default"]
                default = _number(v, lineno, "default")
            return PatternPriorityModel(tuple(rules), default, name=name)

        if section == "aspect":
            aspects = _parse_aspects(values["aspects"][1], values["aspects"][0])
            sentiments = _parse_sentiments(values["sentiments"][1], values["sentiments"][0])
            head = values.get("head", (section_line, "overall"))[1]
            return AspectSentimentModel(aspects, sentiments, head=head, name=name)

        lineno, kind = values["kind"]
        if kind not in ("min", "max"):
            raise ModelSpecError(f"unknown kind {kind!r}", lineno, "kind")
        lineno, arity = values["arity"]
        if not arity.isdigit():
            raise ModelSpecError(f"arity must be a positive integer, got {arity!r}", lineno, "arity")
        return NumericGame(kind, int(arity), name=name)
    except ModelSpecError as exc:
        if exc.line is not None:
            raise
        field = exc.field
        lineno = values[field][0] if field in values else section_line
        raise type(exc)(exc.message, lineno, field) from None


def load_model(path: str | Path):
    return parse_model(Path(path).read_text())


ASPECT_LEXICON = """
aspects = [taste|Tastes|tastes|Taste,
           smell|Smell|smells|Smells,
           appearance|Appearance]
sentiments = { amazing: 1, good: 0.6, refreshing: 0.6,
               bad: -0.6, peculiar: -0.3, horrible: -1 }
"""

BUILTIN_SPECS = {
    "fig1_m": """
[pattern]
name = fig1_m
"very good" => 0.9
"nice" => 0.7
"good" => 0.6
default = 0
""",
    "fig2_mO": "[aspect]\nname = fig2_mO\n" + ASPECT_LEXICON + "head = overall\n",
    "fig2_mS": "[aspect]\nname = fig2_mS\n" + ASPECT_LEXICON + "head = aspect:smell\n",
    "fig2_mT": "[aspect]\nname = fig2_mT\n" + ASPECT_LEXICON + "head = aspect:taste\n",
    "min2": "[numeric]\nname = min2\nkind = min\narity = 2\n",
    "max3": "[numeric]\nname = max3\nkind = max\narity = 3\n",
}


def builtin_model(name: str):
    try:
        return parse_model(BUILTIN_SPECS[name])
    except KeyError:
        raise KeyError(
            f"no built-in model {name!r}; choose from {sorted(BUILTIN_SPECS)}"
        ) from None


def resolve_model(ref: str):
    """A built-in model by name, otherwise a description file path."""
    if ref in BUILTIN_SPECS:
        return builtin_model(ref)
    path = Path(ref)
    if not path.exists():
        raise FileNotFoundError(
            f"{ref!r} is neither a built-in model ({', '.join(sorted(BUILTIN_SPECS))}) nor a file"
        )
    return load_model(path)
