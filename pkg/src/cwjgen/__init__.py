"""cwj-gen: C++ wrapper generation for Java class files plus a JNI
call-count simulator for the caching protocol."""

from .classfile import (
    BadConstantPool,
    BadMagic,
    BadUtf8,
    ClassFileError,
    FixtureSyntax,
    JavaTypeModel,
    RawClassFile,
    TrailingBytes,
    Truncated,
    TypeUniverse,
    build_universe,
    lift_type_model,
    load_fixture_models,
    parse_class_file,
)
from .jvmtypes import (
    ArrayType,
    BadDescriptor,
    ClassType,
    CwjName,
    MethodDescriptor,
    Primitive,
    cwj_type_name,
    encode_java_identifier,
    native_symbol_name,
    parse_field_descriptor,
    parse_method_descriptor,
    print_descriptor,
)
from .typemodel import (
    FieldCacheOptions,
    ResolvedType,
    Unresolved,
    assign_reflection_suffixes,
    classify_field_cache,
    classify_method,
    dependency_closure,
    detect_field_method_clash,
    resolve,
)
from .codegen import (
    ClassPlan,
    EmitText,
    OverlappingRename,
    PlanOptions,
    emit_header,
    filter_rename,
    plan_class,
    support_header,
)

__all__ = [name for name in dir() if not name.startswith("_")]
