"""Test-only class-file writer, independent of the parser under test.

Builds class-file bytes straight from the format layout: constant pool
entries are appended as needed, members carry no attributes.  Used as the
round-trip oracle for parse_class_file/lift_type_model.
"""

import struct

from cwjgen.classfile import (
    ACC_ABSTRACT,
    ACC_FINAL,
    ACC_INTERFACE,
    ACC_NATIVE,
    ACC_PRIVATE,
    ACC_PROTECTED,
    ACC_PUBLIC,
    ACC_STATIC,
    ACC_SUPER,
    JavaTypeModel,
)
from cwjgen.jvmtypes import print_descriptor

_VIS_FLAG = {"public": ACC_PUBLIC, "protected": ACC_PROTECTED,
             "private": ACC_PRIVATE, "package": 0}


def encode_modified_utf8(text: str) -> bytes:
    out = bytearray()
    for ch in text:
        cp = ord(ch)
        units = []
        if cp > 0xFFFF:
            cp -= 0x10000
            units = [0xD800 + (cp >> 10), 0xDC00 + (cp & 0x3FF)]
        else:
            units = [cp]
        for u in units:
            if 0 < u < 0x80:
                out.append(u)
            elif u < 0x800:
                out.append(0xC0 | (u >> 6))
                out.append(0x80 | (u & 0x3F))
            else:
                out.append(0xE0 | (u >> 12))
                out.append(0x80 | ((u >> 6) & 0x3F))
                out.append(0x80 | (u & 0x3F))
    return bytes(out)


class _Pool:
    def __init__(self):
        self.entries = []  # encoded bytes per entry
        self._utf8 = {}
        self._cls = {}

    def utf8(self, text: str) -> int:
        if text not in self._utf8:
            data = encode_modified_utf8(text)
            self.entries.append(struct.pack(">BH", 1, len(data)) + data)
            self._utf8[text] = len(self.entries)
        return self._utf8[text]

    def class_ref(self, dotted: str) -> int:
        if dotted not in self._cls:
            name_index = self.utf8(dotted.replace(".", "/"))
            self.entries.append(struct.pack(">BH", 7, name_index))
            self._cls[dotted] = len(self.entries)
        return self._cls[dotted]

    def dump(self) -> bytes:
        return struct.pack(">H", len(self.entries) + 1) + b"".join(self.entries)


def write_class_file(model: JavaTypeModel, major: int = 46,
                     minor: int = 0) -> bytes:
    pool = _Pool()
    this_index = pool.class_ref(model.qualified_name)
    if model.kind == "interface":
        super_index = pool.class_ref("java.lang.Object")
    elif model.superclass is not None:
        super_index = pool.class_ref(model.superclass)
    else:
        super_index = 0
    interface_indices = [pool.class_ref(i) for i in model.direct_interfaces]

    fields = []
    for f in model.fields:
        flags = _VIS_FLAG[f.visibility]
        if f.is_static:
            flags |= ACC_STATIC
        if f.is_final:
            flags |= ACC_FINAL
        fields.append(struct.pack(
            ">HHHH", flags, pool.utf8(f.name),
            pool.utf8(print_descriptor(f.descriptor)), 0))

    # methods come back out in declaration_index order, constructors included
    ordered = sorted(
        [("<init>", c.visibility, c.descriptor, c.declaration_index,
          False, False, False, False) for c in model.constructors]
        + [(m.name, m.visibility, m.descriptor, m.declaration_index,
            m.is_static, m.is_final, m.is_abstract, m.is_native)
           for m in model.methods],
        key=lambda item: item[3])
    methods = []
    for name, vis, descriptor, _, is_static, is_final, is_abstract, is_native in ordered:
        flags = _VIS_FLAG[vis]
        if is_static:
            flags |= ACC_STATIC
        if is_final:
            flags |= ACC_FINAL
        if is_abstract:
            flags |= ACC_ABSTRACT
        if is_native:
            flags |= ACC_NATIVE
        methods.append(struct.pack(
            ">HHHH", flags, pool.utf8(name),
            pool.utf8(print_descriptor(descriptor)), 0))

    access = ACC_PUBLIC
    if model.kind == "interface":
        access |= ACC_INTERFACE | ACC_ABSTRACT
    else:
        access |= ACC_SUPER
        if model.is_final:
            access |= ACC_FINAL
        if model.is_abstract:
            access |= ACC_ABSTRACT

    out = bytearray()
    out += struct.pack(">IHH", 0xCAFEBABE, minor, major)
    out += pool.dump()
    out += struct.pack(">HHH", access, this_index, super_index)
    out += struct.pack(">H", len(interface_indices))
    for idx in interface_indices:
        out += struct.pack(">H", idx)
    out += struct.pack(">H", len(fields)) + b"".join(fields)
    out += struct.pack(">H", len(methods)) + b"".join(methods)
    out += struct.pack(">H", 0)  # class attributes
    return bytes(out)
