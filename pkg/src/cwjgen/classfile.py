"""Java class-file parsing and the semantic type model.

Three layers: a byte-level parse into RawClassFile (constant pool kept
tagged, attributes kept opaque), a lift into JavaTypeModel, and a textual
fixture loader producing the same models without a Java compiler.

Fixture grammar (line oriented, '#' comments):

    [public] [final|abstract] class QName [extends QName] [implements QName[,QName...]]
    [public] interface QName [extends QName[,QName...]]
      field <flags> <name> <descriptor>
      method <flags> <name> <descriptor>
      ctor <flags> <descriptor>
    end

where <flags> is a comma list of public|protected|private|package|static|
final|abstract|native (default visibility: package).  Classes other than
java.lang.Object default to extends java.lang.Object.
"""

from __future__ import annotations

import struct
import warnings
from dataclasses import dataclass, field

from .jvmtypes import (
    BadDescriptor,
    MethodDescriptor,
    TypeDescriptor,
    parse_field_descriptor,
    parse_method_descriptor,
)


class ClassFileError(Exception):
    """Base for class-file parse failures."""


class BadMagic(ClassFileError):
    pass


class Truncated(ClassFileError):
    pass


class TrailingBytes(ClassFileError):
    pass


class BadConstantPool(ClassFileError):
    pass


class BadUtf8(ClassFileError):
    pass


class FixtureSyntax(Exception):
    """Raised on malformed fixture documents; carries the line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


MAGIC = 0xCAFEBABE

ACC_PUBLIC = 0x0001
ACC_PRIVATE = 0x0002
ACC_PROTECTED = 0x0004
ACC_STATIC = 0x0008
ACC_FINAL = 0x0010
ACC_SUPER = 0x0020
ACC_NATIVE = 0x0100
ACC_INTERFACE = 0x0200
ACC_ABSTRACT = 0x0400

CONSTANT_UTF8 = 1
CONSTANT_INTEGER = 3
CONSTANT_FLOAT = 4
CONSTANT_LONG = 5
CONSTANT_DOUBLE = 6
CONSTANT_CLASS = 7
CONSTANT_STRING = 8
CONSTANT_FIELDREF = 9
CONSTANT_METHODREF = 10
CONSTANT_INTERFACE_METHODREF = 11
CONSTANT_NAME_AND_TYPE = 12
CONSTANT_METHOD_HANDLE = 15
CONSTANT_METHOD_TYPE = 16
CONSTANT_DYNAMIC = 17
CONSTANT_INVOKE_DYNAMIC = 18
CONSTANT_MODULE = 19
CONSTANT_PACKAGE = 20

# payload struct formats for fixed-size entries (Utf8 is variable)
_POOL_FMT = {
    CONSTANT_INTEGER: ">i",
    CONSTANT_FLOAT: ">I",
    CONSTANT_LONG: ">q",
    CONSTANT_DOUBLE: ">Q",
    CONSTANT_CLASS: ">H",
    CONSTANT_STRING: ">H",
    CONSTANT_FIELDREF: ">HH",
    CONSTANT_METHODREF: ">HH",
    CONSTANT_INTERFACE_METHODREF: ">HH",
    CONSTANT_NAME_AND_TYPE: ">HH",
    CONSTANT_METHOD_HANDLE: ">BH",
    CONSTANT_METHOD_TYPE: ">H",
    CONSTANT_DYNAMIC: ">HH",
    CONSTANT_INVOKE_DYNAMIC: ">HH",
    CONSTANT_MODULE: ">H",
    CONSTANT_PACKAGE: ">H",
}


@dataclass(frozen=True)
class PoolEntry:
    tag: int
    value: object  # decoded str for Utf8, tuple of indices otherwise


@dataclass(frozen=True)
class RawMember:
    access_flags: int
    name_index: int
    descriptor_index: int
    attributes: tuple[tuple[int, bytes], ...]


@dataclass(frozen=True)
class RawClassFile:
    magic: int
    minor: int
    major: int
    constant_pool: tuple[PoolEntry | None, ...]  # 1-indexed; None fillers
    access_flags: int
    this_class: int
    super_class: int
    interfaces: tuple[int, ...]
    fields: tuple[RawMember, ...]
    methods: tuple[RawMember, ...]
    attributes: tuple[tuple[int, bytes], ...]

    def utf8(self, index: int) -> str:
        entry = self._entry(index, CONSTANT_UTF8)
        return entry.value

    def class_name(self, index: int) -> str:
        entry = self._entry(index, CONSTANT_CLASS)
        return self.utf8(entry.value[0])

    def _entry(self, index: int, tag: int) -> PoolEntry:
        if index < 1 or index >= len(self.constant_pool):
            raise BadConstantPool("pool index %d out of range" % index)
        entry = self.constant_pool[index]
        if entry is None or entry.tag != tag:
            raise BadConstantPool("pool index %d is not tag %d" % (index, tag))
        return entry


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise Truncated("wanted %d bytes at offset %d" % (n, self.pos))
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def u1(self) -> int:
        return self.take(1)[0]

    def u2(self) -> int:
        return struct.unpack(">H", self.take(2))[0]

    def u4(self) -> int:
        return struct.unpack(">I", self.take(4))[0]


def decode_modified_utf8(data: bytes) -> str:
    """Decode JVM modified UTF-8 (CESU-8 style, C0 80 for NUL)."""
    units: list[int] = []
    i = 0
    n = len(data)
    while i < n:
        b = data[i]
        if b == 0 or b >= 0xF0:
            raise BadUtf8("byte 0x%02x at %d" % (b, i))
        if b < 0x80:
            units.append(b)
            i += 1
        elif b & 0xE0 == 0xC0:
            if i + 1 >= n or data[i + 1] & 0xC0 != 0x80:
                raise BadUtf8("bad 2-byte sequence at %d" % i)
            units.append(((b & 0x1F) << 6) | (data[i + 1] & 0x3F))
            i += 2
        elif b & 0xF0 == 0xE0:
            if i + 2 >= n or data[i + 1] & 0xC0 != 0x80 or data[i + 2] & 0xC0 != 0x80:
                raise BadUtf8("bad 3-byte sequence at %d" % i)
            units.append(((b & 0x0F) << 12) | ((data[i + 1] & 0x3F) << 6)
                         | (data[i + 2] & 0x3F))
            i += 3
        else:
            raise BadUtf8("byte 0x%02x at %d" % (b, i))
    # recombine surrogate pairs into code points
    out = []
    j = 0
    while j < len(units):
        u = units[j]
        if 0xD800 <= u <= 0xDBFF and j + 1 < len(units) \
                and 0xDC00 <= units[j + 1] <= 0xDFFF:
            out.append(chr(0x10000 + ((u - 0xD800) << 10)
                           + (units[j + 1] - 0xDC00)))
            j += 2
        else:
            out.append(chr(u))
            j += 1
    return "".join(out)


def _read_attributes(r: _Reader) -> tuple[tuple[int, bytes], ...]:
    count = r.u2()
    attrs = []
    for _ in range(count):
        name_index = r.u2()
        length = r.u4()
        attrs.append((name_index, r.take(length)))
    return tuple(attrs)


def _read_member(r: _Reader) -> RawMember:
    flags = r.u2()
    name_index = r.u2()
    descriptor_index = r.u2()
    return RawMember(flags, name_index, descriptor_index, _read_attributes(r))


def parse_class_file(data: bytes) -> RawClassFile:
    """Parse class-file bytes; total over arbitrary input (value or error)."""
    r = _Reader(data)
    magic = r.u4()
    if magic != MAGIC:
        raise BadMagic("0x%08x" % magic)
    minor = r.u2()
    major = r.u2()
    if major > 52:
        warnings.warn("class-file version %d.%d is newer than 52 (JDK 8); "
                      "parsing anyway" % (major, minor))

    pool_count = r.u2()
    if pool_count < 1:
        raise BadConstantPool("constant pool count %d" % pool_count)
    pool: list[PoolEntry | None] = [None]
    while len(pool) < pool_count:
        tag = r.u1()
        if tag == CONSTANT_UTF8:
            length = r.u2()
            pool.append(PoolEntry(tag, decode_modified_utf8(r.take(length))))
        elif tag in _POOL_FMT:
            fmt = _POOL_FMT[tag]
            raw = r.take(struct.calcsize(fmt))
            pool.append(PoolEntry(tag, struct.unpack(fmt, raw)))
        else:
            raise BadConstantPool("unknown tag %d at entry %d" % (tag, len(pool)))
        if tag in (CONSTANT_LONG, CONSTANT_DOUBLE):
            pool.append(None)  # 8-byte entries take two slots

    access_flags = r.u2()
    this_class = r.u2()
    super_class = r.u2()
    interfaces = tuple(r.u2() for _ in range(r.u2()))
    fields = tuple(_read_member(r) for _ in range(r.u2()))
    methods = tuple(_read_member(r) for _ in range(r.u2()))
    attributes = _read_attributes(r)
    if r.pos != len(data):
        raise TrailingBytes("%d trailing bytes" % (len(data) - r.pos))

    raw = RawClassFile(magic, minor, major, tuple(pool), access_flags,
                       this_class, super_class, interfaces, fields, methods,
                       attributes)
    _validate_pool_use(raw)
    return raw


def _validate_pool_use(raw: RawClassFile):
    raw.class_name(raw.this_class)
    if raw.super_class != 0:
        raw.class_name(raw.super_class)
    for idx in raw.interfaces:
        raw.class_name(idx)
    for member in raw.fields + raw.methods:
        raw.utf8(member.name_index)
        raw.utf8(member.descriptor_index)


VISIBILITIES = ("public", "protected", "package", "private")


def _visibility(flags: int) -> str:
    if flags & ACC_PUBLIC:
        return "public"
    if flags & ACC_PROTECTED:
        return "protected"
    if flags & ACC_PRIVATE:
        return "private"
    return "package"


@dataclass(frozen=True)
class JavaField:
    name: str
    descriptor: TypeDescriptor
    is_static: bool
    is_final: bool
    visibility: str
    declaration_index: int

    @property
    def is_private(self) -> bool:
        return self.visibility == "private"


@dataclass(frozen=True)
class JavaMethod:
    name: str
    descriptor: MethodDescriptor
    is_static: bool
    is_final: bool
    is_abstract: bool
    is_native: bool
    visibility: str
    declaration_index: int

    @property
    def is_private(self) -> bool:
        return self.visibility == "private"


@dataclass(frozen=True)
class JavaConstructor:
    descriptor: MethodDescriptor
    visibility: str
    declaration_index: int

    @property
    def is_private(self) -> bool:
        return self.visibility == "private"


@dataclass(frozen=True)
class JavaTypeModel:
    qualified_name: str
    kind: str  # "class" | "interface"
    is_final: bool
    is_abstract: bool
    superclass: str | None
    direct_interfaces: tuple[str, ...]
    fields: tuple[JavaField, ...]
    methods: tuple[JavaMethod, ...]
    constructors: tuple[JavaConstructor, ...]

    @property
    def simple_name(self) -> str:
        return self.qualified_name.rsplit(".", 1)[-1]


def lift_type_model(raw: RawClassFile) -> JavaTypeModel:
    """Resolve pool references into a JavaTypeModel; `<init>` becomes a constructor."""
    name = raw.class_name(raw.this_class).replace("/", ".")
    is_interface = bool(raw.access_flags & ACC_INTERFACE)
    superclass = None
    if raw.super_class != 0 and not is_interface:
        superclass = raw.class_name(raw.super_class).replace("/", ".")
    interfaces = tuple(raw.class_name(i).replace("/", ".")
                       for i in raw.interfaces)

    fields = []
    for i, m in enumerate(raw.fields):
        try:
            descriptor = parse_field_descriptor(raw.utf8(m.descriptor_index))
        except BadDescriptor:
            raise
        fields.append(JavaField(
            name=raw.utf8(m.name_index),
            descriptor=descriptor,
            is_static=bool(m.access_flags & ACC_STATIC),
            is_final=bool(m.access_flags & ACC_FINAL),
            visibility=_visibility(m.access_flags),
            declaration_index=i,
        ))

    methods = []
    constructors = []
    for i, m in enumerate(raw.methods):
        mname = raw.utf8(m.name_index)
        if mname == "<clinit>":
            continue
        descriptor = parse_method_descriptor(raw.utf8(m.descriptor_index))
        if mname == "<init>":
            constructors.append(JavaConstructor(
                descriptor=descriptor,
                visibility=_visibility(m.access_flags),
                declaration_index=i,
            ))
            continue
        methods.append(JavaMethod(
            name=mname,
            descriptor=descriptor,
            is_static=bool(m.access_flags & ACC_STATIC),
            is_final=bool(m.access_flags & ACC_FINAL),
            is_abstract=bool(m.access_flags & ACC_ABSTRACT),
            is_native=bool(m.access_flags & ACC_NATIVE),
            visibility=_visibility(m.access_flags),
            declaration_index=i,
        ))

    return JavaTypeModel(
        qualified_name=name,
        kind="interface" if is_interface else "class",
        is_final=bool(raw.access_flags & ACC_FINAL),
        is_abstract=bool(raw.access_flags & ACC_ABSTRACT) and not is_interface,
        superclass=superclass,
        direct_interfaces=interfaces,
        fields=tuple(fields),
        methods=tuple(methods),
        constructors=tuple(constructors),
    )


@dataclass
class TypeUniverse:
    """Name-indexed set of models; closed over supertypes for full generation."""
    types: dict[str, JavaTypeModel] = field(default_factory=dict)
    unresolved: set[str] = field(default_factory=set)

    def add(self, model: JavaTypeModel):
        self.types[model.qualified_name] = model
        self.unresolved.discard(model.qualified_name)

    def get(self, name: str) -> JavaTypeModel | None:
        return self.types.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self.types


_MEMBER_FLAGS = {
    "public": ("visibility", "public"),
    "protected": ("visibility", "protected"),
    "private": ("visibility", "private"),
    "package": ("visibility", "package"),
    "static": ("is_static", True),
    "final": ("is_final", True),
    "abstract": ("is_abstract", True),
    "native": ("is_native", True),
}


def _parse_member_flags(text: str, lineno: int) -> dict:
    out = {"visibility": "package", "is_static": False, "is_final": False,
           "is_abstract": False, "is_native": False}
    for flag in text.split(","):
        flag = flag.strip()
        if not flag:
            continue
        if flag not in _MEMBER_FLAGS:
            raise FixtureSyntax("unknown flag %r" % flag, lineno)
        key, value = _MEMBER_FLAGS[flag]
        out[key] = value
    return out


def load_fixture_models(text: str) -> list[JavaTypeModel]:
    """Parse a fixture document into type models (see module docstring)."""
    models: list[JavaTypeModel] = []
    current: dict | None = None

    def finish():
        nonlocal current
        if current is None:
            return
        models.append(JavaTypeModel(
            qualified_name=current["name"],
            kind=current["kind"],
            is_final=current["is_final"],
            is_abstract=current["is_abstract"],
            superclass=current["superclass"],
            direct_interfaces=tuple(current["interfaces"]),
            fields=tuple(current["fields"]),
            methods=tuple(current["methods"]),
            constructors=tuple(current["constructors"]),
        ))
        current = None

    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]

        if head in ("class", "interface") or (
                head in ("public", "final", "abstract") and
                any(t in ("class", "interface") for t in tokens)):
            if current is not None:
                raise FixtureSyntax("missing 'end' before new declaration", lineno)
            current = _parse_type_header(tokens, lineno)
            continue

        if head == "end":
            if current is None:
                raise FixtureSyntax("'end' outside a declaration", lineno)
            finish()
            continue

        if current is None:
            raise FixtureSyntax("member line outside a declaration", lineno)

        if head == "field":
            if len(tokens) != 4:
                raise FixtureSyntax("field wants: field <flags> <name> <descriptor>", lineno)
            flags = _parse_member_flags(tokens[1], lineno)
            try:
                descriptor = parse_field_descriptor(tokens[3])
            except BadDescriptor as exc:
                raise FixtureSyntax(str(exc), lineno)
            if current["kind"] == "interface":
                flags["is_static"] = True
                flags["is_final"] = True
            current["fields"].append(JavaField(
                name=tokens[2], descriptor=descriptor,
                is_static=flags["is_static"], is_final=flags["is_final"],
                visibility=flags["visibility"],
                declaration_index=len(current["fields"])))
        elif head == "method":
            if len(tokens) != 4:
                raise FixtureSyntax("method wants: method <flags> <name> <descriptor>", lineno)
            flags = _parse_member_flags(tokens[1], lineno)
            try:
                descriptor = parse_method_descriptor(tokens[3])
            except BadDescriptor as exc:
                raise FixtureSyntax(str(exc), lineno)
            if current["kind"] == "interface":
                flags["is_abstract"] = True
            current["methods"].append(JavaMethod(
                name=tokens[2], descriptor=descriptor,
                is_static=flags["is_static"], is_final=flags["is_final"],
                is_abstract=flags["is_abstract"], is_native=flags["is_native"],
                visibility=flags["visibility"],
                declaration_index=len(current["methods"]) + len(current["constructors"])))
        elif head == "ctor":
            if len(tokens) != 3:
                raise FixtureSyntax("ctor wants: ctor <flags> <descriptor>", lineno)
            if current["kind"] == "interface":
                raise FixtureSyntax("interfaces have no constructors", lineno)
            flags = _parse_member_flags(tokens[1], lineno)
            try:
                descriptor = parse_method_descriptor(tokens[2])
            except BadDescriptor as exc:
                raise FixtureSyntax(str(exc), lineno)
            current["constructors"].append(JavaConstructor(
                descriptor=descriptor, visibility=flags["visibility"],
                declaration_index=len(current["methods"]) + len(current["constructors"])))
        else:
            raise FixtureSyntax("unrecognized line %r" % line, lineno)

    if current is not None:
        raise FixtureSyntax("missing 'end' at end of document")
    return models


def _parse_type_header(tokens: list[str], lineno: int) -> dict:
    is_final = False
    is_abstract = False
    i = 0
    while tokens[i] in ("public", "final", "abstract"):
        if tokens[i] == "final":
            is_final = True
        elif tokens[i] == "abstract":
            is_abstract = True
        i += 1
    kind = tokens[i]
    if kind not in ("class", "interface"):
        raise FixtureSyntax("expected class or interface", lineno)
    i += 1
    if i >= len(tokens):
        raise FixtureSyntax("missing type name", lineno)
    name = tokens[i]
    i += 1

    rest = " ".join(tokens[i:])
    superclass = None
    interfaces: list[str] = []
    if rest:
        parts = rest.replace(",", " , ").split()
        j = 0
        while j < len(parts):
            if parts[j] == "extends":
                j += 1
                names, j = _take_name_list(parts, j, lineno)
                if kind == "class":
                    if len(names) != 1:
                        raise FixtureSyntax("a class extends exactly one class", lineno)
                    superclass = names[0]
                else:
                    interfaces.extend(names)
            elif parts[j] == "implements":
                if kind == "interface":
                    raise FixtureSyntax("interfaces cannot implement", lineno)
                j += 1
                names, j = _take_name_list(parts, j, lineno)
                interfaces.extend(names)
            else:
                raise FixtureSyntax("unexpected token %r" % parts[j], lineno)

    if kind == "class" and superclass is None and name != "java.lang.Object":
        superclass = "java.lang.Object"
    return {
        "name": name, "kind": kind, "is_final": is_final,
        "is_abstract": is_abstract if kind == "class" else False,
        "superclass": superclass, "interfaces": interfaces,
        "fields": [], "methods": [], "constructors": [],
    }


def _take_name_list(parts: list[str], j: int, lineno: int) -> tuple[list[str], int]:
    names = []
    expect_name = True
    while j < len(parts):
        if parts[j] in ("extends", "implements"):
            break
        if parts[j] == ",":
            if expect_name:
                raise FixtureSyntax("dangling comma", lineno)
            expect_name = True
        else:
            if not expect_name:
                break
            names.append(parts[j])
            expect_name = False
        j += 1
    if not names or expect_name:
        raise FixtureSyntax("expected type name list", lineno)
    return names, j


def build_universe(models) -> TypeUniverse:
    universe = TypeUniverse()
    for model in models:
        universe.add(model)
    return universe
