"""Hierarchy closure and member classification.

Everything codegen and the simulator need to know about a class is decided
here: supertype chains, interface closures, placeholder detection, the
polymorphic-method predicate, field cache classes, reflection-name
suffixes, field/method name clashes, and the generation closure over a
root set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classfile import JavaTypeModel, TypeUniverse
from .jvmtypes import ArrayType, ClassType, MethodDescriptor, print_descriptor

OBJECT = "java.lang.Object"


class Unresolved(Exception):
    """A required type (usually a supertype) is missing from the universe."""

    def __init__(self, name):
        super().__init__(name)
        self.name = name


@dataclass(frozen=True)
class FieldCacheOptions:
    """Options controlling final-instance-field caching (vendor specific)."""
    cache_final_instance: bool = False
    word_width: int = 32


@dataclass(frozen=True)
class ResolvedType:
    model: JavaTypeModel
    superclass_chain: tuple[str, ...]          # nearest first
    superinterface_closure: tuple[str, ...]    # direct then indirect, de-duplicated
    is_placeholder: bool

    @property
    def qualified_name(self) -> str:
        return self.model.qualified_name


def resolve(universe: TypeUniverse, name: str,
            forced_placeholders: frozenset[str] = frozenset()) -> ResolvedType:
    """Compute chains and closures for `name`; supertypes must resolve."""
    model = universe.get(name)
    if model is None:
        raise Unresolved(name)

    if model.kind == "interface":
        # jtype inheritance for interfaces goes to Object
        chain: list[str] = [] if name == OBJECT else [OBJECT]
        if OBJECT not in universe and name != OBJECT:
            raise Unresolved(OBJECT)
    else:
        chain = []
        cursor = model.superclass
        while cursor is not None:
            parent = universe.get(cursor)
            if parent is None:
                raise Unresolved(cursor)
            chain.append(cursor)
            cursor = parent.superclass

    closure: list[str] = []
    seen: set[str] = set()

    def visit_interface(iname: str):
        if iname in seen:
            return
        seen.add(iname)
        closure.append(iname)
        imodel = universe.get(iname)
        if imodel is None:
            raise Unresolved(iname)
        for sub in imodel.direct_interfaces:
            visit_interface(sub)

    for iname in model.direct_interfaces:
        visit_interface(iname)
    # interfaces reachable through the superclass chain are still convertible
    for sname in chain:
        smodel = universe.get(sname)
        for iname in smodel.direct_interfaces:
            visit_interface(iname)

    is_placeholder = (model.kind == "interface"
                      and not model.fields and not model.methods) \
        or name in forced_placeholders

    return ResolvedType(model, tuple(chain), tuple(closure), is_placeholder)


MEMBER_KINDS = ("constructor", "static-field", "instance-field",
                "static-method", "polymorphic-method", "nonpolymorphic-method")


def classify_method(universe: TypeUniverse, declaring: ResolvedType,
                    method) -> str:
    """Dispatch family for a method: static, polymorphic, or nonpolymorphic."""
    if method.is_static:
        return "static-method"
    if method.is_private:
        return "nonpolymorphic-method"
    model = declaring.model
    if model.kind == "interface" or model.is_abstract:
        return "polymorphic-method"
    if not method.is_final and not model.is_final:
        return "polymorphic-method"
    # sealed class or final method: polymorphic only when overriding
    if _overrides_supertype(universe, declaring, method):
        return "polymorphic-method"
    return "nonpolymorphic-method"


def _overrides_supertype(universe, declaring, method) -> bool:
    descriptor = method.descriptor
    for sname in declaring.superclass_chain:
        smodel = universe.get(sname)
        for m in smodel.methods:
            if (m.name == method.name and m.descriptor == descriptor
                    and not m.is_static and not m.is_private):
                return True
    for iname in declaring.superinterface_closure:
        imodel = universe.get(iname)
        for m in imodel.methods:
            if m.name == method.name and m.descriptor == descriptor:
                return True
    return False


CACHE_CLASSES = ("none", "static-final-primitive", "static-final-object",
                 "instance-final")


def classify_field_cache(universe: TypeUniverse, declaring: ResolvedType,
                         java_field, options: FieldCacheOptions) -> str:
    """Which cache a field value may live in (final fields only)."""
    if not java_field.is_final:
        return "none"
    if java_field.is_static:
        if isinstance(java_field.descriptor, (ClassType, ArrayType)):
            return "static-final-object"
        return "static-final-primitive"
    if not options.cache_final_instance:
        return "none"
    final_instance = sum(1 for f in declaring.model.fields
                         if f.is_final and not f.is_static)
    if final_instance > options.word_width:
        return "none"
    return "instance-final"


def assign_reflection_suffixes(model: JavaTypeModel) -> dict:
    """Reflection-support names, unique per class.

    Enumeration order is declaration order (fields, then constructors, then
    methods); the second member of a name gets _2, the third _3, and so on.
    Keys are ("field", name, index) / ("ctor", index) / ("method", index).
    """
    counts: dict[str, int] = {}
    names: dict[tuple, str] = {}

    def take(base: str) -> str:
        n = counts.get(base, 0) + 1
        counts[base] = n
        return base if n == 1 else "%s_%d" % (base, n)

    for f in model.fields:
        names[("field", f.name, f.declaration_index)] = take(f.name)
    simple = model.simple_name
    for c in model.constructors:
        names[("ctor", c.declaration_index)] = take(simple)
    for m in model.methods:
        names[("method", m.declaration_index)] = take(m.name)
    return names


def detect_field_method_clash(model: JavaTypeModel) -> set[str]:
    """Names used by both a field and a method/constructor wrapper."""
    field_names = {f.name for f in model.fields}
    method_names = {m.name for m in model.methods}
    if model.constructors:
        method_names.add(model.simple_name)
    return field_names & method_names


def member_class_refs(model: JavaTypeModel):
    """Class names referenced from member signatures (any array depth)."""
    names: list[str] = []

    def add(descriptor):
        if isinstance(descriptor, MethodDescriptor):
            for p in descriptor.params:
                add(p)
            add(descriptor.return_type)
        elif isinstance(descriptor, ArrayType):
            add(descriptor.element)
        elif isinstance(descriptor, ClassType):
            if descriptor.qualified_name not in names:
                names.append(descriptor.qualified_name)

    for f in model.fields:
        add(f.descriptor)
    for c in model.constructors:
        add(c.descriptor)
    for m in model.methods:
        add(m.descriptor)
    return names


@dataclass
class GenerationPlanEntry:
    name: str
    thin: bool


def dependency_closure(universe: TypeUniverse, roots, *,
                       thin_roots: bool = False) -> list[GenerationPlanEntry]:
    """Mark every class to generate as full or thin, in emission order.

    Roots are full (thin when `thin_roots`); supertypes of full classes are
    full; member-signature types of full classes and supertypes of thin
    classes are thin.  Order is supertypes-before-subtypes with name ties.
    """
    marking: dict[str, bool] = {}  # name -> thin?

    def mark(name: str, thin: bool):
        model = universe.get(name)
        if model is None:
            raise Unresolved(name)
        if name in marking and marking[name] <= thin:
            return  # already at least this strong (full < thin)
        marking[name] = thin
        resolved = resolve(universe, name)
        for sname in resolved.superclass_chain:
            mark(sname, thin)
        for iname in resolved.superinterface_closure:
            mark(iname, thin)
        if not thin and not thin_roots:
            for ref in member_class_refs(model):
                mark(ref, True)

    for root in roots:
        mark(root, thin_roots)

    # deterministic topological order: supertypes first, ties by name
    selected = set(marking)
    deps: dict[str, set[str]] = {}
    for name in selected:
        resolved = resolve(universe, name)
        deps[name] = ({s for s in resolved.superclass_chain if s in selected}
                      | {i for i in resolved.superinterface_closure if i in selected})
    order: list[str] = []
    remaining = dict(deps)
    while remaining:
        ready = sorted(n for n, d in remaining.items() if not d)
        if not ready:  # inheritance cycles cannot happen in valid Java input
            ready = sorted(remaining)
        for name in ready:
            order.append(name)
            del remaining[name]
        for d in remaining.values():
            d.difference_update(ready)

    return [GenerationPlanEntry(name, marking[name]) for name in order]
