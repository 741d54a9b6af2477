"""Declaration-level parsing of emitted headers for the golden checks.

The comparison the goldens need is token-level on names, parameter lists,
base lists, and member order, insensitive to whitespace and decoration
tokens (public:, inline, const).  Both the emitted header and the golden
declarations run through the same parser.
"""

import re
from dataclasses import dataclass

_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|[0-9]+|.")
_NOISE = {"public", "inline", "const", ":", ";", "virtual"}


def tokenize(text: str) -> list[str]:
    return [t for t in _TOKEN.findall(text) if not t.isspace()]


@dataclass(frozen=True)
class Decl:
    """Normalized member declaration: (static?, return, name, param types)."""
    is_static: bool
    return_tokens: tuple
    name_tokens: tuple
    param_types: tuple  # tuple of token tuples

    def __str__(self):
        return "%s%s %s(%s)" % (
            "static " if self.is_static else "",
            " ".join(self.return_tokens) or "-",
            " ".join(self.name_tokens),
            ",".join(" ".join(p) for p in self.param_types))


def parse_declaration(text: str) -> Decl:
    tokens = [t for t in tokenize(text) if t not in _NOISE]
    is_static = "static" in tokens
    tokens = [t for t in tokens if t != "static"]

    # split at the parameter list opening: the last top-level '(' whose
    # closing ')' ends the declaration
    depth = 0
    open_index = None
    for i, t in enumerate(tokens):
        if t == "(":
            if depth == 0:
                open_index = i
            depth += 1
        elif t == ")":
            depth -= 1
    if open_index is None:
        raise ValueError("not a member function declaration: %r" % text)
    head = tokens[:open_index]
    params = tokens[open_index + 1:len(tokens) - 1] \
        if tokens[-1] == ")" else tokens[open_index + 1:-1]
    # conversion operator: name is everything from 'operator'
    if "operator" in head:
        k = head.index("operator")
        return Decl(is_static, tuple(head[:k]), tuple(head[k:]),
                    _split_params(params))
    # constructor (no return type) or normal member: name is the last
    # identifier run including template suffix
    name, ret = _split_name(head)
    return Decl(is_static, tuple(ret), tuple(name), _split_params(params))


def _split_name(head):
    if not head:
        raise ValueError("empty declaration head")
    # name may carry a template suffix `< n >`
    end = len(head)
    if head[-1] == ">":
        depth = 0
        for i in range(len(head) - 1, -1, -1):
            if head[i] == ">":
                depth += 1
            elif head[i] == "<":
                depth -= 1
                if depth == 0:
                    end = i
                    break
        name = head[end - 1:]
        ret = head[:end - 1]
    else:
        name = [head[-1]]
        ret = head[:-1]
    return name, ret


def _split_params(tokens):
    if not tokens:
        return ()
    groups = []
    current = []
    depth = 0
    for t in tokens:
        if t == "<":
            depth += 1
        elif t == ">":
            depth -= 1
        if t == "," and depth == 0:
            groups.append(current)
            current = []
        else:
            current.append(t)
    groups.append(current)
    return tuple(_strip_param_name(g) for g in groups)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _strip_param_name(tokens):
    # a parameter is TYPE [NAME]; a trailing bare identifier after a
    # complete type is the name
    if len(tokens) >= 2 and _IDENT.fullmatch(tokens[-1]):
        prev = tokens[-2]
        if prev in ("const", "unsigned", "signed"):
            return tuple(tokens)  # multi-token type, no name
        if prev in (">", "*", "&") or _IDENT.fullmatch(prev):
            return tuple(tokens[:-1])
    return tuple(tokens)


class ParsedClass:
    def __init__(self, name, bases, declarations):
        self.name = name
        self.bases = bases          # list of (virtual?, name)
        self.declarations = declarations  # list of Decl


def parse_header_classes(body: str) -> dict:
    """Extract every class declaration block from an emitted header."""
    classes = {}
    lines = body.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        match = re.match(r"(?:template<>\s*)?class\s+(\w+(?:< \d+ >)?)\s*(.*)$",
                         line)
        if match and line.endswith("{"):
            name = match.group(1)
            bases = _parse_bases(match.group(2))
            decls = []
            i += 1
            while i < len(lines) and lines[i].strip() != "};":
                member = lines[i].strip()
                if member.startswith("public:") or member.startswith("private:"):
                    visibility = "public" if member.startswith("public:") else "private"
                    if "(" in member and visibility == "public":
                        try:
                            decls.append(parse_declaration(member))
                        except ValueError:
                            pass
                i += 1
            classes[name] = ParsedClass(name, bases, decls)
        i += 1
    return classes


def _parse_bases(rest: str):
    rest = rest.strip()
    if rest.endswith("{"):
        rest = rest[:-1]
    rest = rest.strip()
    if not rest.startswith(":"):
        return []
    bases = []
    for part in rest[1:].split(","):
        tokens = part.split()
        virtual = "virtual" in tokens
        names = [t for t in tokens if t not in ("public", "virtual")]
        bases.append((virtual, names[-1]))
    return bases


def find_typedefs(body: str) -> list[tuple]:
    """All `typedef <tokens> <alias>;` lines as token tuples."""
    out = []
    for line in body.splitlines():
        line = line.strip()
        if line.startswith("typedef "):
            out.append(tuple(tokenize(line[len("typedef"):].rstrip(";"))))
    return out


def assert_subsequence(expected, actual, label=""):
    """Every expected Decl appears in `actual` in the stated relative order."""
    pos = 0
    for exp in expected:
        found = None
        for i in range(pos, len(actual)):
            if actual[i] == exp:
                found = i
                break
        assert found is not None, (
            "%s: missing or out of order: %s\n(after index %d of:\n  %s)" % (
                label, exp, pos,
                "\n  ".join(str(d) for d in actual)))
        pos = found + 1
