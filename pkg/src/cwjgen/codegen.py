"""C++ wrapper-header emission.

plan_class decides everything (names, bases, conversions, wrapper set,
cache slots); emit_header renders it into deterministic header text.
Output is header-only: per-class static data lives in a class template and
dimension-indexed statics are function-local statics of inline members, so
the compiler instantiates all definitions.

Headers use a two-section layout (declarations guarded by CWJ_G_*, inline
definitions gated on the referenced types' CWJ_D_* macros) so mutually
referencing headers compile in any inclusion order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classfile import JavaTypeModel, TypeUniverse
from .jvmtypes import (
    ArrayType,
    ClassType,
    CwjName,
    MethodDescriptor,
    Primitive,
    TypeDescriptor,
    cwj_type_name,
    encode_java_identifier,
    family_letter,
    jni_class_name,
    native_symbol_name,
    print_descriptor,
)
from .typemodel import (
    FieldCacheOptions,
    ResolvedType,
    assign_reflection_suffixes,
    classify_field_cache,
    classify_method,
    detect_field_method_clash,
    member_class_refs,
    resolve,
)

OBJECT = "java.lang.Object"
CLASS = "java.lang.Class"
CLONEABLE = "java.lang.Cloneable"

SUPPORT_HEADER_NAME = "cwj_support.h"

PRIMITIVES = ("boolean", "byte", "char", "short", "int", "long", "float",
              "double")

# Every JNI entity name that may appear in emitted output.  The stub jni.h
# used by the compile-check harness must declare exactly these.
_FAMILIES = ("Object", "Boolean", "Byte", "Char", "Short", "Int", "Long",
             "Float", "Double")
_PRIM_FAMILIES = _FAMILIES[1:]
EMISSION_TABLE = tuple(
    ["JNIEnv", "JavaVM", "jobject", "jclass", "jarray", "jobjectArray",
     "jstring", "jthrowable", "jweak", "jfieldID", "jmethodID", "jsize",
     "jboolean", "jbyte", "jchar", "jshort", "jint", "jlong", "jfloat",
     "jdouble", "JNIEXPORT", "JNICALL", "JNI_FALSE", "JNI_TRUE"]
    + ["j%sArray" % p for p in ("boolean", "byte", "char", "short", "int",
                                "long", "float", "double")]
    + ["FindClass", "NewWeakGlobalRef", "DeleteWeakGlobalRef", "GetSuperclass",
       "GetObjectClass", "GetMethodID", "GetStaticMethodID", "GetFieldID",
       "GetStaticFieldID", "NewObject", "GetObjectArrayElement",
       "SetObjectArrayElement", "GetArrayLength", "NewObjectArray",
       "IsInstanceOf", "IsSameObject", "ExceptionCheck"]
    + ["Get%sField" % f for f in _FAMILIES]
    + ["Set%sField" % f for f in _FAMILIES]
    + ["GetStatic%sField" % f for f in _FAMILIES]
    + ["SetStatic%sField" % f for f in _FAMILIES]
    + ["Call%sMethod" % f for f in _FAMILIES + ("Void",)]
    + ["CallNonvirtual%sMethod" % f for f in _FAMILIES + ("Void",)]
    + ["CallStatic%sMethod" % f for f in _FAMILIES + ("Void",)]
    + ["New%sArray" % f for f in _PRIM_FAMILIES]
    + ["Get%sArrayRegion" % f for f in _PRIM_FAMILIES]
    + ["Set%sArrayRegion" % f for f in _PRIM_FAMILIES]
    + ["Get%sArrayElements" % f for f in _PRIM_FAMILIES]
    + ["Release%sArrayElements" % f for f in _PRIM_FAMILIES]
)


class OverlappingRename(Exception):
    """Two rename rules claim the same identifier."""


@dataclass(frozen=True)
class PlanOptions:
    visibility: str = "protected"  # public | protected | private
    cache_final_instance: bool = False
    direct_native: bool = False
    word_width: int = 32

    def field_cache_options(self) -> FieldCacheOptions:
        return FieldCacheOptions(self.cache_final_instance, self.word_width)


_VIS_RANK = {"public": 0, "protected": 1, "package": 2, "private": 3}
_LEVEL_MAX = {"public": 0, "protected": 1, "private": 3}


def member_visible(visibility: str, level: str) -> bool:
    return _VIS_RANK[visibility] <= _LEVEL_MAX[level]


@dataclass(frozen=True)
class PlannedWrapper:
    """One wrapper member function and how its body is implemented."""
    decl_name: str
    member_case: str     # constructor | static-field | instance-field |
                         # static-method | polymorphic-method | nonpolymorphic-method
    accessor: str        # new | get | set | call
    is_static: bool
    return_type: TypeDescriptor
    params: tuple[TypeDescriptor, ...]
    descriptor_text: str
    java_name: str
    cache_slot: str
    cache_class: str     # none | static-final-primitive | static-final-object | instance-final
    clash_tag: str | None


@dataclass(frozen=True)
class PlannedReflection:
    name: str
    id_type: str         # jfieldID | jmethodID
    cache_slot: str
    lookup_fn: str
    java_name: str
    descriptor_text: str


@dataclass(frozen=True)
class PlannedNativeCall:
    """Option-gated direct wrapper around a Java_ symbol (native methods)."""
    decl_name: str
    symbol: str
    is_static: bool
    return_type: TypeDescriptor
    params: tuple[TypeDescriptor, ...]


@dataclass
class ClassPlan:
    qualified_name: str
    names: CwjName
    kind: str
    thin: bool
    placeholder: bool
    jtype_base: str | None            # base jtype identifier, None for Object
    jtype_conversions: list[str]      # conversion-target jtype identifiers
    Jtype_bases: list[str]
    Jtype_conversions: list[str]      # placeholder jtypes the Jtype converts to
    wrapper_members: list[PlannedWrapper]
    reflection_members: list[PlannedReflection]
    native_members: bool
    native_calls: list[PlannedNativeCall]
    array_conversions: list[tuple[str, bool]]  # (target family or jtype, same-dim?)
    array_element_jtype: str | None   # element jtype for the dim-1 specialization
    includes: list[str]
    supertypes: list[str] = field(default_factory=list)
    referenced: list[str] = field(default_factory=list)  # names whose headers are included
    has_class_jtype: bool = False     # java.lang.Class resolvable
    has_cloneable: bool = False
    cascade_target: str | None = None  # superclass jtype for native() cascade
    final_instance_fields: list[tuple[str, TypeDescriptor]] = field(default_factory=list)
    simple_name: str = ""
    is_object: bool = False
    is_class_class: bool = False

    @property
    def header_name(self) -> str:
        return "j%s.h" % encode_java_identifier(self.qualified_name)

    @property
    def cache_struct(self) -> str:
        return "cwj_cache_%s" % encode_java_identifier(self.qualified_name)


@dataclass
class EmitText:
    header_name: str
    body: str
    protected_spans: list[tuple[int, int]] = field(default_factory=list)


def header_name_for(qualified_name: str) -> str:
    return "j%s.h" % encode_java_identifier(qualified_name)


def _guard(qualified_name: str, prefix: str) -> str:
    return "CWJ_%s_%s" % (prefix, encode_java_identifier(qualified_name))


def plan_class(resolved: ResolvedType, universe: TypeUniverse,
               options: PlanOptions, *, thin: bool = False) -> ClassPlan:
    model = resolved.model
    name = model.qualified_name
    names = cwj_type_name(ClassType(name))
    placeholder = resolved.is_placeholder
    has_class_jtype = CLASS in universe
    has_cloneable = CLONEABLE in universe

    jtype_base = None
    if resolved.superclass_chain:
        jtype_base = cwj_type_name(ClassType(resolved.superclass_chain[0])).jtype_name

    jtype_conversions = [cwj_type_name(ClassType(i)).jtype_name
                         for i in resolved.superinterface_closure]

    # Jtype bases: direct supertypes' Jtypes plus Object's, virtual, de-duplicated;
    # placeholder interfaces have no Jtype and convert instead.
    Jtype_bases: list[str] = []
    Jtype_conversions: list[str] = []
    if not placeholder and not thin:
        directs: list[str] = []
        if model.kind == "class" and model.superclass is not None:
            directs.append(model.superclass)
        directs.extend(model.direct_interfaces)
        for d in directs:
            if resolve(universe, d).is_placeholder:
                continue
            jt = cwj_type_name(ClassType(d)).Jtype_name
            if jt not in Jtype_bases:
                Jtype_bases.append(jt)
        if name != OBJECT:
            object_J = cwj_type_name(ClassType(OBJECT)).Jtype_name
            if object_J not in Jtype_bases:
                Jtype_bases.append(object_J)
        for i in resolved.superinterface_closure:
            if resolve(universe, i).is_placeholder:
                Jtype_conversions.append(cwj_type_name(ClassType(i)).jtype_name)

    wrappers: list[PlannedWrapper] = []
    reflections: list[PlannedReflection] = []
    suffixes = assign_reflection_suffixes(model)
    clashes = detect_field_method_clash(model)
    cache_opts = options.field_cache_options()
    final_instance: list[tuple[str, TypeDescriptor]] = []

    if not thin:
        for f in model.fields:
            if not member_visible(f.visibility, options.visibility):
                continue
            cache_class = classify_field_cache(universe, resolved, f, cache_opts)
            member_case = "static-field" if f.is_static else "instance-field"
            slot = "f_%s" % f.name
            tag = "field" if f.name in clashes else None
            dtext = print_descriptor(f.descriptor)
            wrappers.append(PlannedWrapper(
                decl_name=f.name, member_case=member_case, accessor="get",
                is_static=f.is_static, return_type=f.descriptor, params=(),
                descriptor_text=dtext, java_name=f.name, cache_slot=slot,
                cache_class=cache_class, clash_tag=tag))
            if not f.is_final:
                wrappers.append(PlannedWrapper(
                    decl_name=f.name, member_case=member_case, accessor="set",
                    is_static=f.is_static, return_type=Primitive("void"),
                    params=(f.descriptor,), descriptor_text=dtext,
                    java_name=f.name, cache_slot=slot, cache_class="none",
                    clash_tag=tag))
            if cache_class == "instance-final":
                final_instance.append((f.name, f.descriptor))
            reflections.append(PlannedReflection(
                name=suffixes[("field", f.name, f.declaration_index)],
                id_type="jfieldID", cache_slot=slot,
                lookup_fn="GetStaticFieldID" if f.is_static else "GetFieldID",
                java_name=f.name, descriptor_text=dtext))

        simple = model.simple_name
        for c in model.constructors:
            if not member_visible(c.visibility, options.visibility):
                continue
            dtext = print_descriptor(c.descriptor)
            refl = suffixes[("ctor", c.declaration_index)]
            slot = "m_%s" % refl
            tag = "method" if simple in clashes else None
            wrappers.append(PlannedWrapper(
                decl_name=simple, member_case="constructor", accessor="new",
                is_static=True, return_type=ClassType(name),
                params=c.descriptor.params, descriptor_text=dtext,
                java_name="<init>", cache_slot=slot, cache_class="none",
                clash_tag=tag))
            reflections.append(PlannedReflection(
                name=refl, id_type="jmethodID", cache_slot=slot,
                lookup_fn="GetMethodID", java_name="<init>",
                descriptor_text=dtext))

        for m in model.methods:
            if not member_visible(m.visibility, options.visibility):
                continue
            member_case = classify_method(universe, resolved, m)
            dtext = print_descriptor(m.descriptor)
            refl = suffixes[("method", m.declaration_index)]
            slot = "m_%s" % refl
            tag = "method" if m.name in clashes else None
            wrappers.append(PlannedWrapper(
                decl_name=m.name, member_case=member_case, accessor="call",
                is_static=m.is_static, return_type=m.descriptor.return_type,
                params=m.descriptor.params, descriptor_text=dtext,
                java_name=m.name, cache_slot=slot, cache_class="none",
                clash_tag=tag))
            reflections.append(PlannedReflection(
                name=refl, id_type="jmethodID", cache_slot=slot,
                lookup_fn="GetStaticMethodID" if m.is_static else "GetMethodID",
                java_name=m.name, descriptor_text=dtext))

    native_calls: list[PlannedNativeCall] = []
    if options.direct_native and not thin:
        native_names = [m.name for m in model.methods if m.is_native]
        for m in model.methods:
            if not m.is_native:
                continue
            if not member_visible(m.visibility, options.visibility):
                continue
            overloaded = native_names.count(m.name) > 1
            native_calls.append(PlannedNativeCall(
                decl_name=m.name,
                symbol=native_symbol_name(name, m.name, overloaded, m.descriptor),
                is_static=m.is_static,
                return_type=m.descriptor.return_type,
                params=m.descriptor.params))

    # array conversion operators: supertypes' families at the same dimension,
    # then plain Cloneable
    array_conversions: list[tuple[str, bool]] = []
    for s in resolved.superclass_chain:
        array_conversions.append(
            ("j%sARRAYD" % encode_java_identifier(s), True))
    for i in resolved.superinterface_closure:
        if i == CLONEABLE:
            continue
        array_conversions.append(
            ("j%sARRAYD" % encode_java_identifier(i), True))
    if has_cloneable and name != CLONEABLE:
        array_conversions.append(
            (cwj_type_name(ClassType(CLONEABLE)).jtype_name, False))

    # referenced types: supertypes always; member and machinery types when full
    supertypes: list[str] = list(resolved.superclass_chain)
    for i in resolved.superinterface_closure:
        if i not in supertypes:
            supertypes.append(i)
    machinery: list[str] = []
    if has_cloneable and name != CLONEABLE and CLONEABLE not in supertypes:
        machinery.append(CLONEABLE)
    if not thin:
        if has_class_jtype and name != CLASS and CLASS not in supertypes \
                and CLASS not in machinery:
            machinery.append(CLASS)
        for ref in sorted(set(member_class_refs(model))):
            if ref != name and ref not in supertypes and ref not in machinery:
                machinery.append(ref)
    referenced = supertypes + sorted(machinery)

    includes = [header_name_for(r) for r in referenced]

    return ClassPlan(
        qualified_name=name,
        names=names,
        kind=model.kind,
        thin=thin,
        placeholder=placeholder,
        jtype_base=jtype_base,
        jtype_conversions=jtype_conversions,
        Jtype_bases=Jtype_bases,
        Jtype_conversions=Jtype_conversions,
        wrapper_members=wrappers,
        reflection_members=reflections,
        native_members=not thin and has_class_jtype,
        native_calls=native_calls,
        array_conversions=array_conversions,
        array_element_jtype=names.jtype_name,
        includes=includes,
        supertypes=supertypes,
        referenced=referenced,
        has_class_jtype=has_class_jtype,
        has_cloneable=has_cloneable,
        cascade_target=(cwj_type_name(ClassType(resolved.superclass_chain[0])).jtype_name
                        if resolved.superclass_chain else None),
        final_instance_fields=final_instance,
        simple_name=model.simple_name,
        is_object=name == OBJECT,
        is_class_class=name == CLASS,
    )


def _cwj_param_type(d: TypeDescriptor) -> str:
    return cwj_type_name(d).render()


def _sig(params, leading="JNIEnv*") -> str:
    parts = [leading] if leading else []
    parts.extend(_cwj_param_type(p) for p in params)
    return ",".join(parts)


def _is_object_type(d: TypeDescriptor) -> bool:
    return isinstance(d, (ClassType, ArrayType))


class _Writer:
    def __init__(self):
        self.lines: list[str] = []

    def line(self, text=""):
        self.lines.append(text)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def emit_header(plan: ClassPlan) -> EmitText:
    """Render one class's header.

    Layout: a guarded declaration section (supertype headers included up
    front, everything else forward-declared), a reopen block re-including
    every referenced header behind a recursion latch, and an implementation
    section gated on the referenced types' DECLARED macros.  The gating
    makes mutually referencing headers compile in any inclusion order.
    """
    w = _Writer()
    Jname = plan.names.Jtype_name
    guard = _guard(plan.qualified_name, "G")
    declared = _guard(plan.qualified_name, "D")
    impl = _guard(plan.qualified_name, "I")
    latch = _guard(plan.qualified_name, "R")

    w.line("#ifndef %s" % guard)
    w.line("#define %s" % guard)
    w.line('#include "%s"' % SUPPORT_HEADER_NAME)

    emits_Jtype = not plan.placeholder and not plan.thin
    for r in [plan.qualified_name] + plan.referenced:
        renc = encode_java_identifier(r)
        w.line("class j%s;template<cwj_dim cwj_n> class j%sARRAYD;"
               % (renc, renc))
    if emits_Jtype:
        w.line("class %s;" % plan.names.Jtype_name)
    for r in plan.supertypes:
        w.line('#include "%s"' % header_name_for(r))

    _emit_jtype_decl(w, plan)
    if Jname and not plan.placeholder and not plan.thin:
        _emit_Jtype_decl(w, plan)
    _emit_array_decl(w, plan)
    if plan.is_object:
        _emit_primitive_array_decls(w, plan)

    w.line("#define %s" % declared)
    w.line("#endif")

    # reopen referenced headers on every inclusion so deferred implementation
    # sections complete once their dependencies are declared; the latch only
    # bounds preprocessor recursion through reference cycles
    if plan.referenced:
        w.line("#ifndef %s" % latch)
        w.line("#define %s" % latch)
        for r in plan.referenced:
            w.line('#include "%s"' % header_name_for(r))
        w.line("#undef %s" % latch)
        w.line("#endif")

    gate = ["!defined(%s)" % impl, "defined(%s)" % declared]
    gate += ["defined(%s)" % _guard(r, "D") for r in plan.referenced]
    w.line("#if %s" % "&&".join(gate))
    w.line("#define %s" % impl)
    _emit_cache_struct(w, plan)
    _emit_jtype_impl(w, plan)
    if Jname and not plan.placeholder and not plan.thin:
        _emit_Jtype_impl(w, plan)
    _emit_array_impl(w, plan)
    if plan.is_object:
        _emit_primitive_array_impls(w, plan)
    w.line("#endif")

    body = w.text()
    return EmitText(plan.header_name, body, _string_spans(body))


def _emit_jtype_decl(w: _Writer, plan: ClassPlan):
    jname = plan.names.jtype_name
    Jname = plan.names.Jtype_name
    base = ":public %s" % plan.jtype_base if plan.jtype_base else ""
    w.line("class %s%s{" % (jname, base))
    for target in plan.jtype_conversions:
        w.line("    public:inline operator %s()const;" % target)
    if plan.is_object:
        w.line("    public:inline operator jobject()const;")
    if plan.is_class_class:
        w.line("    public:inline operator jclass()const;")
    w.line("    public:inline %s();" % jname)
    w.line("    public:inline %s(jobject);" % jname)
    if not plan.placeholder and not plan.thin:
        w.line("    public:inline %s operator++(int);" % Jname)
    for m in plan.wrapper_members:
        w.line("    %s" % _wrapper_decl(m))
    if plan.is_object:
        w.line("    public:inline jboolean IsSame(JNIEnv*,jjava_lang_Object);")
    if plan.native_members:
        w.line("    public:inline static jjava_lang_Class native(JNIEnv*);")
        w.line("    public:inline static void native(JNIEnv*,jjava_lang_Class);")
        for m in plan.reflection_members:
            w.line("    public:inline static %s %s(JNIEnv*,JNIEnv*);"
                   % (m.id_type, m.name))
    for n in plan.native_calls:
        ret = cwj_type_name(n.return_type).render()
        w.line("    public:inline %s%s %s(JNIEnv&%s);"
               % ("static " if n.is_static else "", ret, n.decl_name,
                  "".join("," + _cwj_param_type(p) for p in n.params)))
    w.line("    public:static jclass cwjClass(JNIEnv*);")
    if plan.is_object:
        w.line("    private:jobject cwj_o;")
    w.line("};")


def _wrapper_decl(m: PlannedWrapper) -> str:
    ret = cwj_type_name(m.return_type).render()
    lead = "JNIEnv*"
    if m.clash_tag == "field":
        lead = "cwj_field_tag,JNIEnv*"
    elif m.clash_tag == "method":
        lead = "cwj_method_tag,JNIEnv*"
    return "public:inline %s%s %s(%s);" % (
        "static " if m.is_static else "", ret, m.decl_name,
        _sig(m.params, lead))


def _emit_Jtype_decl(w: _Writer, plan: ClassPlan):
    jname = plan.names.jtype_name
    Jname = plan.names.Jtype_name
    bases = ",".join("public virtual %s" % b for b in plan.Jtype_bases)
    w.line("class %s%s{" % (Jname, ":" + bases if bases else ""))
    w.line("    public:inline operator %s()const;" % jname)
    for target in plan.Jtype_conversions:
        w.line("    public:inline operator %s()const;" % target)
    w.line("    public:inline %s(%s);" % (Jname, jname))
    for m in plan.wrapper_members:
        w.line("    %s" % _wrapper_decl(m))
    if plan.final_instance_fields:
        words = (len(plan.final_instance_fields) + 31) // 32
        for i in range(words):
            w.line("    private:int cwj_valid%d;" % i)
        for fname, fdesc in plan.final_instance_fields:
            ctype = "jobject" if _is_object_type(fdesc) \
                else cwj_type_name(fdesc).render()
            w.line("    private:%s cwj_fv_%s;" % (ctype, fname))
    if plan.is_object:
        w.line("    private:%s cwj_o;" % jname)
    w.line("};")


def _array_family(plan: ClassPlan) -> str:
    return "j%sARRAYD" % encode_java_identifier(plan.qualified_name)


def _emit_array_decl(w: _Writer, plan: ClassPlan):
    fam = _array_family(plan)
    jname = plan.names.jtype_name
    w.line("template<cwj_dim n>")
    w.line("class %s:public jjava_lang_Object{" % fam)
    for target, same_dim in plan.array_conversions:
        if same_dim:
            w.line("    public:inline operator %s< n >()const;" % target)
        else:
            w.line("    public:inline operator %s()const;" % target)
    w.line("    public:inline %s();" % fam)
    w.line("    public:inline %s(jobject);" % fam)
    w.line("    public:inline jsize GetLength(JNIEnv* e)const;")
    w.line("    public:inline %s< n-1 > GetElement(JNIEnv* e,jsize index)const;" % fam)
    w.line("    public:inline void SetElement(JNIEnv* e,jsize index,%s< n-1 > value);" % fam)
    w.line("    public:inline static %s< n > New(JNIEnv* e,jsize length,"
           "%s< n-1 > initialElement);" % (fam, fam))
    w.line("    public:static jclass cwjClass(JNIEnv*);")
    w.line("};")
    w.line("template<> class %s< 0 >;" % fam)
    w.line("template<> class %s< 1 >:public jjava_lang_Object{" % fam)
    for target, same_dim in plan.array_conversions:
        if same_dim:
            w.line("    public:inline operator %s< 1 >()const;" % target)
        else:
            w.line("    public:inline operator %s()const;" % target)
    w.line("    public:inline %s< 1 >();" % fam)
    w.line("    public:inline %s< 1 >(jobject);" % fam)
    w.line("    public:inline jsize GetLength(JNIEnv* e)const;")
    w.line("    public:inline %s GetElement(JNIEnv* e,jsize index)const;" % jname)
    w.line("    public:inline void SetElement(JNIEnv* e,jsize index,%s value);" % jname)
    w.line("    public:inline static %s< 1 > New(JNIEnv* e,jsize length,"
           "%s initialElement);" % (fam, jname))
    w.line("    public:static jclass cwjClass(JNIEnv*);")
    w.line("};")
    w.line("typedef %s< 1 > %sArray;" % (fam, jname))
    w.line("typedef %s< 2 > %sArrayArray;" % (fam, jname))


_PRIM_INFO = {
    "boolean": ("jboolean", "Boolean"),
    "byte": ("jbyte", "Byte"),
    "char": ("jchar", "Char"),
    "short": ("jshort", "Short"),
    "int": ("jint", "Int"),
    "long": ("jlong", "Long"),
    "float": ("jfloat", "Float"),
    "double": ("jdouble", "Double"),
}


def _emit_primitive_array_decls(w: _Writer, plan: ClassPlan):
    for prim in PRIMITIVES:
        jt, fam_letter = _PRIM_INFO[prim]
        fam = jt + "ARRAYD"
        w.line("template<cwj_dim n>")
        w.line("class %s:public jjava_lang_Object{" % fam)
        if plan.has_cloneable:
            w.line("    public:inline operator jjava_lang_Cloneable()const;")
        w.line("    public:inline %s();" % fam)
        w.line("    public:inline %s(jobject);" % fam)
        w.line("    public:inline jsize GetLength(JNIEnv* e)const;")
        w.line("    public:inline %s< n-1 > GetElement(JNIEnv* e,jsize index)const;" % fam)
        w.line("    public:inline void SetElement(JNIEnv* e,jsize index,%s< n-1 > value);" % fam)
        w.line("    public:inline static %s< n > New(JNIEnv* e,jsize length,"
               "%s< n-1 > initialElement);" % (fam, fam))
        w.line("    public:static jclass cwjClass(JNIEnv*);")
        w.line("};")
        w.line("template<> class %s< 0 >;" % fam)
        w.line("template<> class %s< 1 >:public jjava_lang_Object{" % fam)
        if plan.has_cloneable:
            w.line("    public:inline operator jjava_lang_Cloneable()const;")
        w.line("    public:inline %s< 1 >();" % fam)
        w.line("    public:inline %s< 1 >(jobject);" % fam)
        w.line("    public:inline jsize GetLength(JNIEnv* e)const;")
        w.line("    public:inline void GetRegion(JNIEnv* e,jsize start,jsize length,%s* buffer)const;" % jt)
        w.line("    public:inline void SetRegion(JNIEnv* e,jsize start,jsize length,const %s* buffer);" % jt)
        w.line("    public:inline %s* GetElements(JNIEnv* e,jboolean* isCopy)const;" % jt)
        w.line("    public:inline void ReleaseElements(JNIEnv* e,%s* elements,jint mode)const;" % jt)
        w.line("    public:inline static %s< 1 > New(JNIEnv* e,jsize length);" % fam)
        w.line("    public:static jclass cwjClass(JNIEnv*);")
        w.line("};")
        w.line("typedef %s< 1 > %sArray1;" % (fam, jt))
        w.line("typedef %s< 2 > %sArrayArray;" % (fam, jt))


def _emit_cache_struct(w: _Writer, plan: ClassPlan):
    cache = plan.cache_struct
    slots: list[tuple[str, str, str]] = [("jclass", "cwj_cls", "0")]
    slots.append(("cwj_array_ref_node*", "cwj_arrays", "0"))
    seen = set()
    for m in plan.wrapper_members:
        if m.cache_slot in seen:
            continue
        seen.add(m.cache_slot)
        id_type = "jfieldID" if m.cache_slot.startswith("f_") else "jmethodID"
        slots.append((id_type, m.cache_slot, "0"))
        if m.cache_class == "static-final-object":
            slots.append(("jobject", "v_%s" % m.java_name, "0"))
        elif m.cache_class == "static-final-primitive":
            slots.append((cwj_type_name(m.return_type).render(),
                          "v_%s" % m.java_name, "0"))
            slots.append(("int", "p_%s" % m.java_name, "0"))
    for r in plan.reflection_members:
        if r.cache_slot not in seen:
            seen.add(r.cache_slot)
            slots.append((r.id_type, r.cache_slot, "0"))

    w.line("template<int cwj_d>")
    w.line("struct %s{" % cache)
    for ctype, sname, _ in slots:
        w.line("    static %s %s;" % (ctype, sname))
    w.line("};")
    for ctype, sname, init in slots:
        w.line("template<int cwj_d> %s %s<cwj_d>::%s=%s;"
               % (ctype, cache, sname, init))


def _cache_ref(plan: ClassPlan, slot: str) -> str:
    return "%s< 0 >::%s" % (plan.cache_struct, slot)


def _emit_jtype_impl(w: _Writer, plan: ClassPlan):
    jname = plan.names.jtype_name
    Jname = plan.names.Jtype_name

    if plan.is_object:
        w.line("inline %s::%s():cwj_o(0){}" % (jname, jname))
        w.line("inline %s::%s(jobject cwj_v):cwj_o(cwj_v){}" % (jname, jname))
        w.line("inline %s::operator jobject()const{return cwj_o;}" % jname)
    else:
        w.line("inline %s::%s(){}" % (jname, jname))
        w.line("inline %s::%s(jobject cwj_v):%s(cwj_v){}"
               % (jname, jname, plan.jtype_base))
    for target in plan.jtype_conversions:
        w.line("inline %s::operator %s()const{return %s(static_cast<jobject>(*this));}"
               % (jname, target, target))
    if plan.is_class_class:
        w.line("inline %s::operator jclass()const{return static_cast<jclass>"
               "(static_cast<jobject>(*this));}" % jname)
    if not plan.placeholder and not plan.thin:
        w.line("inline %s %s::operator++(int){return %s(*this);}"
               % (Jname, jname, Jname))

    w.line("inline jclass %s::cwjClass(JNIEnv* e){" % jname)
    w.line("    if(%s==0){" % _cache_ref(plan, "cwj_cls"))
    w.line('        jclass cwj_c=e->FindClass("%s");CWJ_CHECK(e);'
           % jni_class_name(plan.qualified_name))
    w.line("        %s=static_cast<jclass>(e->NewWeakGlobalRef(cwj_c));CWJ_CHECK(e);"
           % _cache_ref(plan, "cwj_cls"))
    w.line("    }")
    w.line("    return %s;" % _cache_ref(plan, "cwj_cls"))
    w.line("}")

    for m in plan.wrapper_members:
        _emit_wrapper_impl(w, plan, jname, m)

    if plan.is_object:
        w.line("inline jboolean jjava_lang_Object::IsSame(JNIEnv* e,"
               "jjava_lang_Object cwj_p0){")
        w.line("    jboolean cwj_r=e->IsSameObject(static_cast<jobject>(*this),"
               "static_cast<jobject>(cwj_p0));CWJ_CHECK(e);")
        w.line("    return cwj_r;")
        w.line("}")

    if plan.native_members:
        _emit_native_impl(w, plan, jname)
        for r in plan.reflection_members:
            w.line("inline %s %s::%s(JNIEnv* e,JNIEnv*){"
                   % (r.id_type, jname, r.name))
            _emit_id_ensure(w, plan, r.cache_slot, r.lookup_fn, r.java_name,
                            r.descriptor_text, indent="    ")
            w.line("    return %s;" % _cache_ref(plan, r.cache_slot))
            w.line("}")

    for n in plan.native_calls:
        _emit_native_call_impl(w, plan, jname, n)


def _emit_id_ensure(w: _Writer, plan: ClassPlan, slot: str, lookup_fn: str,
                    java_name: str, descriptor_text: str, indent: str):
    ref = _cache_ref(plan, slot)
    w.line("%sif(%s==0){" % (indent, ref))
    w.line('%s    %s=e->%s(%s::cwjClass(e),"%s","%s");CWJ_CHECK(e);'
           % (indent, ref, lookup_fn, plan.names.jtype_name, java_name,
              descriptor_text))
    w.line("%s}" % indent)


def lookup_function(member_case: str, is_static: bool) -> str:
    if member_case == "constructor":
        return "GetMethodID"
    if member_case == "static-field":
        return "GetStaticFieldID"
    if member_case == "instance-field":
        return "GetFieldID"
    if member_case == "static-method":
        return "GetStaticMethodID"
    return "GetMethodID"


def jni_call_function(m: PlannedWrapper) -> str:
    """JNI function a planned wrapper's body calls."""
    if m.member_case == "constructor":
        return "NewObject"
    if m.member_case == "static-field":
        letter = family_letter(m.return_type if m.accessor == "get" else m.params[0])
        return ("GetStatic%sField" if m.accessor == "get" else "SetStatic%sField") % letter
    if m.member_case == "instance-field":
        letter = family_letter(m.return_type if m.accessor == "get" else m.params[0])
        return ("Get%sField" if m.accessor == "get" else "Set%sField") % letter
    letter = family_letter(m.return_type)
    if m.member_case == "static-method":
        return "CallStatic%sMethod" % letter
    if m.member_case == "nonpolymorphic-method":
        return "CallNonvirtual%sMethod" % letter
    return "Call%sMethod" % letter


def _args_text(params) -> str:
    out = []
    for i, p in enumerate(params):
        name = "cwj_p%d" % i
        if _is_object_type(p):
            out.append("static_cast<jobject>(%s)" % name)
        else:
            out.append(name)
    return "".join("," + a for a in out)


def _emit_wrapper_impl(w: _Writer, plan: ClassPlan, owner: str,
                       m: PlannedWrapper, delegate_to: str | None = None):
    ret = cwj_type_name(m.return_type).render()
    params = []
    if m.clash_tag == "field":
        params.append("cwj_field_tag")
    elif m.clash_tag == "method":
        params.append("cwj_method_tag")
    params.append("JNIEnv* e")
    for i, p in enumerate(m.params):
        params.append("%s cwj_p%d" % (_cwj_param_type(p), i))
    w.line("inline %s %s::%s(%s){" % (ret, owner, m.decl_name, ",".join(params)))

    lookup = lookup_function(m.member_case, m.is_static)
    call = jni_call_function(m)
    ref = _cache_ref(plan, m.cache_slot)
    cls = "%s::cwjClass(e)" % plan.names.jtype_name
    this_obj = "static_cast<jobject>(*this)"
    args = _args_text(m.params)

    if m.cache_class == "static-final-object":
        vref = _cache_ref(plan, "v_%s" % m.java_name)
        w.line("    if(%s==0){" % vref)
        _emit_id_ensure(w, plan, m.cache_slot, lookup, m.java_name,
                        m.descriptor_text, indent="        ")
        w.line("        jobject cwj_t=e->GetStaticObjectField(%s,%s);CWJ_CHECK(e);"
               % (cls, ref))
        w.line("        %s=e->NewWeakGlobalRef(cwj_t);CWJ_CHECK(e);" % vref)
        w.line("    }")
        w.line("    return %s(%s);" % (ret, vref))
        w.line("}")
        return
    if m.cache_class == "static-final-primitive":
        vref = _cache_ref(plan, "v_%s" % m.java_name)
        pref = _cache_ref(plan, "p_%s" % m.java_name)
        w.line("    if(!%s){" % pref)
        _emit_id_ensure(w, plan, m.cache_slot, lookup, m.java_name,
                        m.descriptor_text, indent="        ")
        w.line("        %s=e->%s(%s,%s);CWJ_CHECK(e);" % (vref, call, cls, ref))
        w.line("        %s=1;" % pref)
        w.line("    }")
        w.line("    return %s;" % vref)
        w.line("}")
        return

    _emit_id_ensure(w, plan, m.cache_slot, lookup, m.java_name,
                    m.descriptor_text, indent="    ")

    if m.member_case == "constructor":
        w.line("    jobject cwj_r=e->NewObject(%s,%s%s);CWJ_CHECK(e);"
               % (cls, ref, args))
        w.line("    return %s(cwj_r);" % ret)
    elif m.accessor == "get":
        target = cls if m.is_static else this_obj
        if _is_object_type(m.return_type):
            w.line("    jobject cwj_r=e->%s(%s,%s);CWJ_CHECK(e);"
                   % (call, target, ref))
            w.line("    return %s(cwj_r);" % ret)
        else:
            w.line("    %s cwj_r=e->%s(%s,%s);CWJ_CHECK(e);"
                   % (ret, call, target, ref))
            w.line("    return cwj_r;")
    elif m.accessor == "set":
        target = cls if m.is_static else this_obj
        w.line("    e->%s(%s,%s%s);CWJ_CHECK(e);" % (call, target, ref, args))
    else:  # method call
        if m.member_case == "static-method":
            invoke = "e->%s(%s,%s%s)" % (call, cls, ref, args)
        elif m.member_case == "nonpolymorphic-method":
            invoke = "e->%s(%s,%s,%s%s)" % (call, this_obj, cls, ref, args)
        else:
            invoke = "e->%s(%s,%s%s)" % (call, this_obj, ref, args)
        if m.return_type == Primitive("void"):
            w.line("    %s;CWJ_CHECK(e);" % invoke)
        elif _is_object_type(m.return_type):
            w.line("    jobject cwj_r=%s;CWJ_CHECK(e);" % invoke)
            w.line("    return %s(cwj_r);" % ret)
        else:
            w.line("    %s cwj_r=%s;CWJ_CHECK(e);" % (ret, invoke))
            w.line("    return cwj_r;")
    w.line("}")


def _emit_native_impl(w: _Writer, plan: ClassPlan, jname: str):
    cache = plan.cache_struct
    w.line("inline jjava_lang_Class %s::native(JNIEnv* e){" % jname)
    w.line("    return jjava_lang_Class(%s::cwjClass(e));" % jname)
    w.line("}")

    w.line("inline void %s::native(JNIEnv* e,jjava_lang_Class cwj_c){" % jname)
    w.line("    jclass cwj_cls=static_cast<jclass>(static_cast<jobject>(cwj_c));")
    w.line("    if(cwj_cls==0){")
    w.line("        if(%s!=0){e->DeleteWeakGlobalRef(%s);}"
           % (_cache_ref(plan, "cwj_cls"), _cache_ref(plan, "cwj_cls")))
    done = set()
    for m in plan.wrapper_members:
        if m.cache_class == "static-final-object" and m.java_name not in done:
            done.add(m.java_name)
            vref = _cache_ref(plan, "v_%s" % m.java_name)
            w.line("        if(%s!=0){e->DeleteWeakGlobalRef(%s);%s=0;}"
                   % (vref, vref, vref))
        elif m.cache_class == "static-final-primitive" and m.java_name not in done:
            done.add(m.java_name)
            w.line("        %s=0;" % _cache_ref(plan, "p_%s" % m.java_name))
    w.line("        %s=0;" % _cache_ref(plan, "cwj_cls"))
    seen = set()
    for m in list(plan.wrapper_members) + list(plan.reflection_members):
        if m.cache_slot not in seen:
            seen.add(m.cache_slot)
            w.line("        %s=0;" % _cache_ref(plan, m.cache_slot))
    w.line("        cwj_reset_array_refs(%s);" % _cache_ref(plan, "cwj_arrays"))
    w.line("        return;")
    w.line("    }")
    if plan.cascade_target is not None:
        w.line("    %s::native(e,jjava_lang_Class(e->GetSuperclass(cwj_cls)));"
               % plan.cascade_target)
    w.line("    %s=static_cast<jclass>(e->NewWeakGlobalRef(cwj_cls));CWJ_CHECK(e);"
           % _cache_ref(plan, "cwj_cls"))
    seen = set()
    for m in list(plan.wrapper_members) + list(plan.reflection_members):
        if m.cache_slot in seen:
            continue
        seen.add(m.cache_slot)
        if isinstance(m, PlannedWrapper):
            lookup = lookup_function(m.member_case, m.is_static)
            java_name, dtext = m.java_name, m.descriptor_text
        else:
            lookup, java_name, dtext = m.lookup_fn, m.java_name, m.descriptor_text
        w.line('    %s=e->%s(%s,"%s","%s");CWJ_CHECK(e);'
               % (_cache_ref(plan, m.cache_slot), lookup,
                  _cache_ref(plan, "cwj_cls"), java_name, dtext))
    done = set()
    for m in plan.wrapper_members:
        if m.cache_class == "static-final-object" and m.java_name not in done:
            done.add(m.java_name)
            vref = _cache_ref(plan, "v_%s" % m.java_name)
            w.line("    {jobject cwj_t=e->GetStaticObjectField(%s,%s);CWJ_CHECK(e);"
                   "%s=e->NewWeakGlobalRef(cwj_t);CWJ_CHECK(e);}"
                   % (_cache_ref(plan, "cwj_cls"), _cache_ref(plan, m.cache_slot), vref))
        elif m.cache_class == "static-final-primitive" and m.java_name not in done:
            done.add(m.java_name)
            call = jni_call_function(m)
            w.line("    %s=e->%s(%s,%s);CWJ_CHECK(e);%s=1;"
                   % (_cache_ref(plan, "v_%s" % m.java_name), call,
                      _cache_ref(plan, "cwj_cls"), _cache_ref(plan, m.cache_slot),
                      _cache_ref(plan, "p_%s" % m.java_name)))
    w.line("    cwj_reset_array_refs(%s);" % _cache_ref(plan, "cwj_arrays"))
    w.line("}")


_RAW_JNI_TYPE = {
    "boolean": "jboolean", "byte": "jbyte", "char": "jchar", "short": "jshort",
    "int": "jint", "long": "jlong", "float": "jfloat", "double": "jdouble",
    "void": "void",
}


def _raw_native_type(d: TypeDescriptor) -> str:
    if isinstance(d, Primitive):
        return _RAW_JNI_TYPE[d.name]
    if isinstance(d, ArrayType):
        if isinstance(d.element, Primitive) and d.dimension == 1:
            return "j%sArray" % d.element.name
        return "jobjectArray"
    return "jobject"


def _emit_native_call_impl(w: _Writer, plan: ClassPlan, jname: str,
                           n: PlannedNativeCall):
    raw_params = [_raw_native_type(p) for p in n.params]
    this_type = "jclass" if n.is_static else "jobject"
    w.line('extern "C" JNIEXPORT %s JNICALL %s(JNIEnv*,%s%s);'
           % (_raw_native_type(n.return_type), n.symbol, this_type,
              "".join("," + t for t in raw_params)))
    ret = cwj_type_name(n.return_type).render()
    params = ["JNIEnv& e"] + ["%s cwj_p%d" % (_cwj_param_type(p), i)
                              for i, p in enumerate(n.params)]
    w.line("inline %s %s::%s(%s){" % (ret, jname, n.decl_name, ",".join(params)))
    args = []
    for i, (p, raw) in enumerate(zip(n.params, raw_params)):
        if _is_object_type(p):
            args.append("static_cast<%s>(static_cast<jobject>(cwj_p%d))"
                        % (raw, i) if raw != "jobject"
                        else "static_cast<jobject>(cwj_p%d)" % i)
        else:
            args.append("cwj_p%d" % i)
    self_arg = "%s::cwjClass(&e)" % jname if n.is_static \
        else "static_cast<jobject>(*this)"
    invoke = "%s(&e,%s%s)" % (n.symbol, self_arg,
                              "".join("," + a for a in args))
    if n.return_type == Primitive("void"):
        w.line("    %s;" % invoke)
    elif _is_object_type(n.return_type):
        w.line("    return %s(%s);" % (ret, invoke))
    else:
        w.line("    return %s;" % invoke)
    w.line("}")


def _emit_array_impl(w: _Writer, plan: ClassPlan):
    fam = _array_family(plan)
    jname = plan.names.jtype_name
    _emit_array_family_impl(w, fam, jname, plan.array_conversions,
                            element_expr="%s::cwjClass(e)" % jname,
                            register_head=_cache_ref(plan, "cwj_arrays"))


def _emit_array_family_impl(w: _Writer, fam: str, element_jtype: str,
                            conversions, element_expr: str,
                            register_head: str | None):
    tp = "template<cwj_dim n> "
    scope = "%s<n>" % fam
    for target, same_dim in conversions:
        if same_dim:
            w.line("%sinline %s::operator %s< n >()const{return %s< n >"
                   "(static_cast<jobject>(*this));}" % (tp, scope, target, target))
            w.line("inline %s< 1 >::operator %s< 1 >()const{return %s< 1 >"
                   "(static_cast<jobject>(*this));}" % (fam, target, target))
        else:
            w.line("%sinline %s::operator %s()const{return %s"
                   "(static_cast<jobject>(*this));}" % (tp, scope, target, target))
            w.line("inline %s< 1 >::operator %s()const{return %s"
                   "(static_cast<jobject>(*this));}" % (fam, target, target))
    w.line("%sinline %s::%s(){}" % (tp, scope, fam))
    w.line("%sinline %s::%s(jobject cwj_v):jjava_lang_Object(cwj_v){}"
           % (tp, scope, fam))
    w.line("inline %s< 1 >::%s(){}" % (fam, fam))
    w.line("inline %s< 1 >::%s(jobject cwj_v):jjava_lang_Object(cwj_v){}"
           % (fam, fam))
    for specialized in (False, True):
        scope_i = "%s< 1 >" % fam if specialized else scope
        lead = "" if specialized else tp
        w.line("%sinline jsize %s::GetLength(JNIEnv* e)const{" % (lead, scope_i))
        w.line("    jsize cwj_r=e->GetArrayLength(static_cast<jarray>"
               "(static_cast<jobject>(*this)));CWJ_CHECK(e);")
        w.line("    return cwj_r;")
        w.line("}")
    w.line("%sinline %s< n-1 > %s::GetElement(JNIEnv* e,jsize cwj_index)const{"
           % (tp, fam, scope))
    w.line("    jobject cwj_r=e->GetObjectArrayElement(static_cast<jobjectArray>"
           "(static_cast<jobject>(*this)),cwj_index);CWJ_CHECK(e);")
    w.line("    return %s< n-1 >(cwj_r);" % fam)
    w.line("}")
    w.line("inline %s %s< 1 >::GetElement(JNIEnv* e,jsize cwj_index)const{"
           % (element_jtype, fam))
    w.line("    jobject cwj_r=e->GetObjectArrayElement(static_cast<jobjectArray>"
           "(static_cast<jobject>(*this)),cwj_index);CWJ_CHECK(e);")
    w.line("    return %s(cwj_r);" % element_jtype)
    w.line("}")
    w.line("%sinline void %s::SetElement(JNIEnv* e,jsize cwj_index,%s< n-1 > cwj_value){"
           % (tp, scope, fam))
    w.line("    e->SetObjectArrayElement(static_cast<jobjectArray>"
           "(static_cast<jobject>(*this)),cwj_index,static_cast<jobject>(cwj_value));"
           "CWJ_CHECK(e);")
    w.line("}")
    w.line("inline void %s< 1 >::SetElement(JNIEnv* e,jsize cwj_index,%s cwj_value){"
           % (fam, element_jtype))
    w.line("    e->SetObjectArrayElement(static_cast<jobjectArray>"
           "(static_cast<jobject>(*this)),cwj_index,static_cast<jobject>(cwj_value));"
           "CWJ_CHECK(e);")
    w.line("}")
    w.line("%sinline %s< n > %s::New(JNIEnv* e,jsize cwj_length,%s< n-1 > cwj_init){"
           % (tp, fam, scope, fam))
    w.line("    jobject cwj_r=e->NewObjectArray(cwj_length,%s< n-1 >::cwjClass(e),"
           "static_cast<jobject>(cwj_init));CWJ_CHECK(e);" % fam)
    w.line("    return %s< n >(cwj_r);" % fam)
    w.line("}")
    w.line("inline %s< 1 > %s< 1 >::New(JNIEnv* e,jsize cwj_length,%s cwj_init){"
           % (fam, fam, element_jtype))
    w.line("    jobject cwj_r=e->NewObjectArray(cwj_length,%s,"
           "static_cast<jobject>(cwj_init));CWJ_CHECK(e);" % element_expr)
    w.line("    return %s< 1 >(cwj_r);" % fam)
    w.line("}")
    # per-dimension class-reference cache; recompute path after a reset
    for specialized in (False, True):
        scope_i = "%s< 1 >" % fam if specialized else scope
        lead = "" if specialized else tp
        lower = element_expr if specialized else "%s< n-1 >::cwjClass(e)" % fam
        w.line("%sinline jclass %s::cwjClass(JNIEnv* e){" % (lead, scope_i))
        w.line("    static jclass cwj_cls=0;")
        if register_head is not None:
            w.line("    static cwj_array_ref_node cwj_node={0,0};")
        w.line("    if(cwj_cls==0){")
        w.line("        jobject cwj_a=e->NewObjectArray(0,%s,0);CWJ_CHECK(e);" % lower)
        w.line("        cwj_cls=e->GetObjectClass(cwj_a);CWJ_CHECK(e);")
        if register_head is not None:
            w.line("        if(cwj_node.ref==0){cwj_register_array_ref(%s,"
                   "&cwj_node,&cwj_cls);}" % register_head)
        w.line("    }")
        w.line("    return cwj_cls;")
        w.line("}")


def _emit_primitive_array_impls(w: _Writer, plan: ClassPlan):
    for prim in PRIMITIVES:
        jt, letter = _PRIM_INFO[prim]
        fam = jt + "ARRAYD"
        tp = "template<cwj_dim n> "
        scope = "%s<n>" % fam
        if plan.has_cloneable:
            w.line("%sinline %s::operator jjava_lang_Cloneable()const{return "
                   "jjava_lang_Cloneable(static_cast<jobject>(*this));}" % (tp, scope))
            w.line("inline %s< 1 >::operator jjava_lang_Cloneable()const{return "
                   "jjava_lang_Cloneable(static_cast<jobject>(*this));}" % fam)
        w.line("%sinline %s::%s(){}" % (tp, scope, fam))
        w.line("%sinline %s::%s(jobject cwj_v):jjava_lang_Object(cwj_v){}"
               % (tp, scope, fam))
        w.line("inline %s< 1 >::%s(){}" % (fam, fam))
        w.line("inline %s< 1 >::%s(jobject cwj_v):jjava_lang_Object(cwj_v){}"
               % (fam, fam))
        for specialized in (False, True):
            scope_i = "%s< 1 >" % fam if specialized else scope
            lead = "" if specialized else tp
            w.line("%sinline jsize %s::GetLength(JNIEnv* e)const{" % (lead, scope_i))
            w.line("    jsize cwj_r=e->GetArrayLength(static_cast<jarray>"
                   "(static_cast<jobject>(*this)));CWJ_CHECK(e);")
            w.line("    return cwj_r;")
            w.line("}")
        w.line("%sinline %s< n-1 > %s::GetElement(JNIEnv* e,jsize cwj_index)const{"
               % (tp, fam, scope))
        w.line("    jobject cwj_r=e->GetObjectArrayElement(static_cast<jobjectArray>"
               "(static_cast<jobject>(*this)),cwj_index);CWJ_CHECK(e);")
        w.line("    return %s< n-1 >(cwj_r);" % fam)
        w.line("}")
        w.line("%sinline void %s::SetElement(JNIEnv* e,jsize cwj_index,"
               "%s< n-1 > cwj_value){" % (tp, scope, fam))
        w.line("    e->SetObjectArrayElement(static_cast<jobjectArray>"
               "(static_cast<jobject>(*this)),cwj_index,"
               "static_cast<jobject>(cwj_value));CWJ_CHECK(e);")
        w.line("}")
        w.line("%sinline %s< n > %s::New(JNIEnv* e,jsize cwj_length,"
               "%s< n-1 > cwj_init){" % (tp, fam, scope, fam))
        w.line("    jobject cwj_r=e->NewObjectArray(cwj_length,"
               "%s< n-1 >::cwjClass(e),static_cast<jobject>(cwj_init));"
               "CWJ_CHECK(e);" % fam)
        w.line("    return %s< n >(cwj_r);" % fam)
        w.line("}")
        w.line("inline void %s< 1 >::GetRegion(JNIEnv* e,jsize cwj_start,"
               "jsize cwj_length,%s* cwj_buffer)const{" % (fam, jt))
        w.line("    e->Get%sArrayRegion(static_cast<j%sArray>"
               "(static_cast<jobject>(*this)),cwj_start,cwj_length,cwj_buffer);"
               "CWJ_CHECK(e);" % (letter, prim))
        w.line("}")
        w.line("inline void %s< 1 >::SetRegion(JNIEnv* e,jsize cwj_start,"
               "jsize cwj_length,const %s* cwj_buffer){" % (fam, jt))
        w.line("    e->Set%sArrayRegion(static_cast<j%sArray>"
               "(static_cast<jobject>(*this)),cwj_start,cwj_length,cwj_buffer);"
               "CWJ_CHECK(e);" % (letter, prim))
        w.line("}")
        w.line("inline %s* %s< 1 >::GetElements(JNIEnv* e,jboolean* cwj_isCopy)const{"
               % (jt, fam))
        w.line("    %s* cwj_r=e->Get%sArrayElements(static_cast<j%sArray>"
               "(static_cast<jobject>(*this)),cwj_isCopy);CWJ_CHECK(e);"
               % (jt, letter, prim))
        w.line("    return cwj_r;")
        w.line("}")
        w.line("inline void %s< 1 >::ReleaseElements(JNIEnv* e,%s* cwj_elements,"
               "jint cwj_mode)const{" % (fam, jt))
        w.line("    e->Release%sArrayElements(static_cast<j%sArray>"
               "(static_cast<jobject>(*this)),cwj_elements,cwj_mode);CWJ_CHECK(e);"
               % (letter, prim))
        w.line("}")
        w.line("inline %s< 1 > %s< 1 >::New(JNIEnv* e,jsize cwj_length){"
               % (fam, fam))
        w.line("    jobject cwj_r=e->New%sArray(cwj_length);CWJ_CHECK(e);" % letter)
        w.line("    return %s< 1 >(cwj_r);" % fam)
        w.line("}")
        for specialized in (False, True):
            scope_i = "%s< 1 >" % fam if specialized else scope
            lead = "" if specialized else tp
            lower = "0" if specialized else "%s< n-1 >::cwjClass(e)" % fam
            w.line("%sinline jclass %s::cwjClass(JNIEnv* e){" % (lead, scope_i))
            w.line("    static jclass cwj_cls=0;")
            w.line("    if(cwj_cls==0){")
            if specialized:
                w.line("        jobject cwj_a=e->New%sArray(0);CWJ_CHECK(e);" % letter)
            else:
                w.line("        jobject cwj_a=e->NewObjectArray(0,%s,0);CWJ_CHECK(e);"
                       % lower)
            w.line("        cwj_cls=e->GetObjectClass(cwj_a);CWJ_CHECK(e);")
            w.line("    }")
            w.line("    return cwj_cls;")
            w.line("}")


def _emit_Jtype_impl(w: _Writer, plan: ClassPlan):
    jname = plan.names.jtype_name
    Jname = plan.names.Jtype_name

    if plan.is_object:
        w.line("inline %s::operator %s()const{return cwj_o;}" % (Jname, jname))
        w.line("inline %s::%s(%s cwj_v):cwj_o(cwj_v){}" % (Jname, Jname, jname))
    else:
        w.line("inline %s::operator %s()const{return %s(static_cast<jobject>"
               "(operator jjava_lang_Object()));}" % (Jname, jname, jname))
        # virtual bases initialize depth-first: Object's Jtype leads
        ordered_bases = sorted(plan.Jtype_bases,
                               key=lambda b: b != "Jjava_lang_Object")
        inits = ",".join("%s(cwj_v)" % b for b in ordered_bases)
        extra = "".join(",cwj_valid%d(0)" % i
                        for i in range((len(plan.final_instance_fields) + 31) // 32))
        w.line("inline %s::%s(%s cwj_v):%s%s{}" % (Jname, Jname, jname, inits, extra))
    for target in plan.Jtype_conversions:
        w.line("inline %s::operator %s()const{return %s(static_cast<jobject>"
               "(operator jjava_lang_Object()));}" % (Jname, target, target))

    bit_index = {name: i for i, (name, _) in enumerate(plan.final_instance_fields)}
    for m in plan.wrapper_members:
        ret = cwj_type_name(m.return_type).render()
        params = []
        if m.clash_tag == "field":
            params.append("cwj_field_tag cwj_t")
        elif m.clash_tag == "method":
            params.append("cwj_method_tag cwj_t")
        params.append("JNIEnv* e")
        for i, p in enumerate(m.params):
            params.append("%s cwj_p%d" % (_cwj_param_type(p), i))
        w.line("inline %s %s::%s(%s){" % (ret, Jname, m.decl_name,
                                          ",".join(params)))
        fwd = []
        if m.clash_tag == "field":
            fwd.append("cwj_field_tag()")
        elif m.clash_tag == "method":
            fwd.append("cwj_method_tag()")
        fwd.append("e")
        fwd.extend("cwj_p%d" % i for i in range(len(m.params)))
        call_args = ",".join(fwd)
        if m.is_static:
            target = "%s::%s(%s)" % (jname, m.decl_name, call_args)
        else:
            target = "operator %s().%s(%s)" % (jname, m.decl_name, call_args)
        if m.cache_class == "instance-final" and m.accessor == "get":
            bit = bit_index[m.java_name]
            word, mask = bit // 32, 1 << (bit % 32)
            vname = "cwj_fv_%s" % m.java_name
            if _is_object_type(m.return_type):
                w.line("    if(!(cwj_valid%d&0x%x)){" % (word, mask))
                w.line("        %s cwj_t=%s;" % (ret, target))
                w.line("        if(!CWJ_IS_LOCAL_REF(static_cast<jobject>(cwj_t)))"
                       "{return cwj_t;}")
                w.line("        %s=static_cast<jobject>(cwj_t);cwj_valid%d|=0x%x;"
                       % (vname, word, mask))
                w.line("    }")
                w.line("    return %s(%s);" % (ret, vname))
            else:
                w.line("    if(!(cwj_valid%d&0x%x)){%s=%s;cwj_valid%d|=0x%x;}"
                       % (word, mask, vname, target, word, mask))
                w.line("    return %s;" % vname)
        elif m.return_type == Primitive("void"):
            w.line("    %s;" % target)
        else:
            w.line("    return %s;" % target)
        w.line("}")


SUPPORT_HEADER_TEXT = """#ifndef CWJ_SUPPORT_H
#define CWJ_SUPPORT_H
#include <stddef.h>
#include <jni.h>

class JNIFailure{};

#define CWJ_CHECK(e) do{if((e)->ExceptionCheck()){throw JNIFailure();}}while(0)

typedef unsigned int cwj_dim;

struct cwj_field_tag{};
struct cwj_method_tag{};

struct cwj_array_ref_node{jclass* ref;cwj_array_ref_node* next;};
inline void cwj_register_array_ref(cwj_array_ref_node*& head,cwj_array_ref_node* node,jclass* ref){
    node->ref=ref;node->next=head;head=node;
}
inline void cwj_reset_array_refs(cwj_array_ref_node* head){
    for(cwj_array_ref_node* cwj_n=head;cwj_n!=0;cwj_n=cwj_n->next){*(cwj_n->ref)=0;}
}

#define CWJ_IS_LOCAL_REF(o) (((jlong)(size_t)(o))>=0)

#define JNICAST(e,o,t) (t((e)->IsInstanceOf(static_cast<jobject>(o),t::cwjClass(e))?static_cast<jobject>(o):(jobject)0))
#endif
"""


def support_header() -> EmitText:
    return EmitText(SUPPORT_HEADER_NAME, SUPPORT_HEADER_TEXT,
                    _string_spans(SUPPORT_HEADER_TEXT))


def _string_spans(text: str) -> list[tuple[int, int]]:
    """Byte ranges of double-quoted literals (no escapes are ever emitted)."""
    spans = []
    start = None
    for i, ch in enumerate(text):
        if ch == '"':
            if start is None:
                start = i
            else:
                spans.append((start, i + 1))
                start = None
    return spans


_IDENT_CHARS = frozenset(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


def filter_rename(emit: EmitText, renames) -> str:
    """Whole-identifier renames outside double-quoted spans.

    `renames` is a sequence of (old, new) pairs; duplicate olds raise
    OverlappingRename.
    """
    mapping: dict[str, str] = {}
    for old, new in renames:
        if old in mapping and mapping[old] != new:
            raise OverlappingRename(old)
        mapping[old] = new
    if not mapping:
        return emit.body

    protected = emit.protected_spans
    body = emit.body
    out = []
    i = 0
    n = len(body)
    span_iter = iter(protected)
    span = next(span_iter, None)
    while i < n:
        if span is not None and i == span[0]:
            out.append(body[span[0]:span[1]])
            i = span[1]
            span = next(span_iter, None)
            continue
        ch = body[i]
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and body[j] in _IDENT_CHARS \
                    and not (span is not None and j == span[0]):
                j += 1
            token = body[i:j]
            out.append(mapping.get(token, token))
            i = j
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def load_rename_file(text: str):
    """Rename file format: lines of `old new`; '#' comments allowed."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError("line %d: want 'old new'" % lineno)
        pairs.append((parts[0], parts[1]))
    return pairs
