"""JVM descriptor grammar and all generated-name manufacturing.

Covers field/method descriptor parse/print, the JNI identifier escape
encoding, wrapper type names (jtype/Jtype flavors, array names, template
families) and native function symbol names.
"""

from __future__ import annotations

from dataclasses import dataclass


class BadDescriptor(Exception):
    """Raised when a field or method descriptor does not follow the grammar."""


PRIMITIVE_CODES = {
    "Z": "boolean",
    "B": "byte",
    "C": "char",
    "S": "short",
    "I": "int",
    "J": "long",
    "F": "float",
    "D": "double",
    "V": "void",
}
PRIMITIVE_NAMES = {v: k for k, v in PRIMITIVE_CODES.items()}

# JNI primitive type names used in wrapper signatures.
JNI_PRIMITIVE = {
    "boolean": "jboolean",
    "byte": "jbyte",
    "char": "jchar",
    "short": "jshort",
    "int": "jint",
    "long": "jlong",
    "float": "jfloat",
    "double": "jdouble",
    "void": "void",
}

# Call/field family letter per JNI function naming (Call<X>Method, Get<X>Field).
JNI_FAMILY_LETTER = {
    "boolean": "Boolean",
    "byte": "Byte",
    "char": "Char",
    "short": "Short",
    "int": "Int",
    "long": "Long",
    "float": "Float",
    "double": "Double",
    "void": "Void",
}


@dataclass(frozen=True)
class Primitive:
    name: str  # one of PRIMITIVE_NAMES

    def __post_init__(self):
        if self.name not in PRIMITIVE_NAMES:
            raise BadDescriptor("unknown primitive %r" % (self.name,))


@dataclass(frozen=True)
class ClassType:
    qualified_name: str  # dotted Java name


@dataclass(frozen=True)
class ArrayType:
    element: "Primitive | ClassType"  # never itself an array; dimension absorbs nesting
    dimension: int

    def __post_init__(self):
        if self.dimension < 1:
            raise BadDescriptor("array dimension must be >= 1")
        if isinstance(self.element, Primitive) and self.element.name == "void":
            raise BadDescriptor("void array element")


TypeDescriptor = Primitive | ClassType | ArrayType

VOID = Primitive("void")


@dataclass(frozen=True)
class MethodDescriptor:
    params: tuple[TypeDescriptor, ...]
    return_type: TypeDescriptor

    def __post_init__(self):
        for p in self.params:
            if p == VOID:
                raise BadDescriptor("void parameter")


def _parse_one(text: str, pos: int) -> tuple[TypeDescriptor, int]:
    dim = 0
    n = len(text)
    while pos < n and text[pos] == "[":
        dim += 1
        pos += 1
    if pos >= n:
        raise BadDescriptor("truncated descriptor")
    c = text[pos]
    if c == "L":
        end = text.find(";", pos)
        if end < 0:
            raise BadDescriptor("unterminated class descriptor")
        name = text[pos + 1:end]
        if not name:
            raise BadDescriptor("empty class name")
        base: TypeDescriptor = ClassType(name.replace("/", "."))
        pos = end + 1
    elif c in PRIMITIVE_CODES:
        base = Primitive(PRIMITIVE_CODES[c])
        pos += 1
    else:
        raise BadDescriptor("unexpected %r at %d" % (c, pos))
    if dim:
        if base == VOID:
            raise BadDescriptor("void array element")
        return ArrayType(base, dim), pos
    return base, pos


def parse_field_descriptor(text: str) -> TypeDescriptor:
    d, pos = _parse_one(text, 0)
    if pos != len(text):
        raise BadDescriptor("trailing characters in %r" % (text,))
    if d == VOID:
        raise BadDescriptor("void is not a field type")
    return d


def parse_method_descriptor(text: str) -> MethodDescriptor:
    if not text.startswith("("):
        raise BadDescriptor("method descriptor must start with '('")
    pos = 1
    params: list[TypeDescriptor] = []
    while pos < len(text) and text[pos] != ")":
        d, pos = _parse_one(text, pos)
        if d == VOID:
            raise BadDescriptor("void parameter")
        params.append(d)
    if pos >= len(text):
        raise BadDescriptor("missing ')'")
    pos += 1
    ret, pos = _parse_one(text, pos)
    if pos != len(text):
        raise BadDescriptor("trailing characters in %r" % (text,))
    return MethodDescriptor(tuple(params), ret)


def print_descriptor(d: TypeDescriptor | MethodDescriptor) -> str:
    if isinstance(d, MethodDescriptor):
        return "(%s)%s" % ("".join(print_descriptor(p) for p in d.params),
                           print_descriptor(d.return_type))
    if isinstance(d, Primitive):
        return PRIMITIVE_NAMES[d.name]
    if isinstance(d, ClassType):
        return "L%s;" % d.qualified_name.replace(".", "/")
    return "[" * d.dimension + print_descriptor(d.element)


def jni_class_name(qualified_name: str) -> str:
    """Slash form used by FindClass literals ("java/util/BitSet")."""
    return qualified_name.replace(".", "/")


_PASS = frozenset(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789")


def encode_java_identifier(name: str) -> str:
    """JNI escape encoding over each UTF-16 code unit of `name`.

    '.' and '/' -> '_', '_' -> '_1', ';' -> '_2', '[' -> '_3', ASCII
    alphanumerics pass through, anything else -> '_0' + 4 lowercase hex
    digits.  Supplementary code points escape each surrogate unit
    separately, keeping the encoding injective.
    """
    out = []
    for ch in name:
        cp = ord(ch)
        if cp > 0xFFFF:
            cp -= 0x10000
            units = (0xD800 + (cp >> 10), 0xDC00 + (cp & 0x3FF))
        else:
            units = (cp,)
        for u in units:
            c = chr(u)
            if c in _PASS:
                out.append(c)
            elif c in "./":
                out.append("_")
            elif c == "_":
                out.append("_1")
            elif c == ";":
                out.append("_2")
            elif c == "[":
                out.append("_3")
            else:
                out.append("_0%04x" % u)
    return "".join(out)


@dataclass(frozen=True)
class CwjName:
    """Wrapper-class naming for one Java type.

    jtype_name/Jtype_name are plain identifiers; for arrays past dimension
    two they name the template family and `template_dimension` carries the
    explicit instantiation dimension.
    """
    jtype_name: str
    Jtype_name: str | None = None
    is_template: bool = False
    template_dimension: int | None = None

    def render(self) -> str:
        """Use-site spelling (template instantiations include `< n >`)."""
        if self.is_template:
            return "%s< %d >" % (self.jtype_name, self.template_dimension)
        return self.jtype_name


def cwj_type_name(d: TypeDescriptor) -> CwjName:
    if isinstance(d, Primitive):
        return CwjName(JNI_PRIMITIVE[d.name])
    if isinstance(d, ClassType):
        enc = encode_java_identifier(d.qualified_name)
        return CwjName("j" + enc, "J" + enc)
    elem = d.element
    if isinstance(elem, Primitive):
        base = JNI_PRIMITIVE[elem.name]
        # jintArray would collide with the JNI-provided typedef.
        if d.dimension == 1:
            return CwjName(base + "Array1")
    else:
        base = "j" + encode_java_identifier(elem.qualified_name)
        if d.dimension == 1:
            return CwjName(base + "Array")
    if d.dimension == 2:
        return CwjName(base + "ArrayArray")
    return CwjName(base + "ARRAYD", is_template=True,
                   template_dimension=d.dimension)


def array_family_name(element: Primitive | ClassType) -> str:
    """Template family identifier for arrays of `element` (any dimension)."""
    if isinstance(element, Primitive):
        return JNI_PRIMITIVE[element.name] + "ARRAYD"
    return "j" + encode_java_identifier(element.qualified_name) + "ARRAYD"


def native_symbol_name(class_name: str, method_name: str, overloaded: bool,
                       descriptor: MethodDescriptor) -> str:
    """Java_ symbol for a native method; long form when overloaded."""
    sym = "Java_%s_%s" % (encode_java_identifier(class_name),
                          encode_java_identifier(method_name))
    if overloaded:
        params = "".join(print_descriptor(p) for p in descriptor.params)
        sym += "__" + encode_java_identifier(params)
    return sym


def family_letter(d: TypeDescriptor) -> str:
    """JNI function family for a value of type `d` (GetIntField, CallVoidMethod...)."""
    if isinstance(d, Primitive):
        return JNI_FAMILY_LETTER[d.name]
    return "Object"
