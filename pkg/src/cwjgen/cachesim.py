"""Caching-protocol simulator: charges the JNI calls the emitted wrapper
bodies would make, without a JVM.

A script is a line-oriented sequence of events.  Events before the `iter`
marker form the prologue (run once); events after it form the body, which
is replayed per iteration.  Grammar (one event per line, '#' comments):

    init <class>                       native(e, Class): explicit caching
    reset <class>                      native(e, 0): release caches
    iter                               start of the per-iteration body
    new <class> [<descriptor>]         constructor call
    get <class> <field> [@<instance>]  field read
    set <class> <field>                field write
    invoke <class> <method> [<descriptor>]
    jnicast <class>                    checked downcast
    alen|aget|aset|anew <element> <dim>   array ops; <element> is a class
                                          name or a primitive name
    raw <JNIFunction>                  replayed verbatim in raw mode

Modes: raw replays only `raw` events; lazy charges cache lookups at first
use; eager requires `init` events and never charges lookups outside them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .classfile import TypeUniverse
from .jvmtypes import ArrayType, ClassType, Primitive, family_letter, parse_method_descriptor
from .typemodel import (
    FieldCacheOptions,
    classify_field_cache,
    classify_method,
    resolve,
)


class ScriptError(Exception):
    """Malformed simulator script."""


class UnknownMember(Exception):
    """A script event references a member the universe does not have."""


class EagerWithoutInit(Exception):
    """Eager mode touched a class that was never explicitly initialized."""


class ShapeMismatch(Exception):
    """diff_traces over traces with different iteration structure."""


@dataclass(frozen=True)
class CallEvent:
    op: str                   # init | reset | new | get | set | invoke |
                              # jnicast | alen | aget | aset | anew | raw
    class_name: str = ""
    member: str = ""
    descriptor: str = ""
    dimension: int = 0
    instance: str = ""


@dataclass
class Script:
    prologue: list[CallEvent] = field(default_factory=list)
    body: list[CallEvent] = field(default_factory=list)


_PRIMS = {"boolean", "byte", "char", "short", "int", "long", "float", "double"}


def parse_script(text: str) -> Script:
    script = Script()
    target = script.prologue
    saw_iter = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        op = tokens[0]
        try:
            if op == "iter":
                if saw_iter:
                    raise ScriptError("line %d: duplicate iter marker" % lineno)
                saw_iter = True
                target = script.body
                continue
            if op in ("init", "reset", "jnicast"):
                if len(tokens) != 2:
                    raise ScriptError("line %d: %s wants a class name" % (lineno, op))
                target.append(CallEvent(op, class_name=tokens[1]))
            elif op == "new":
                if len(tokens) not in (2, 3):
                    raise ScriptError("line %d: new <class> [<descriptor>]" % lineno)
                target.append(CallEvent(op, class_name=tokens[1],
                                        descriptor=tokens[2] if len(tokens) == 3 else ""))
            elif op in ("get", "set"):
                if len(tokens) < 3:
                    raise ScriptError("line %d: %s <class> <field>" % (lineno, op))
                instance = ""
                if len(tokens) == 4 and tokens[3].startswith("@"):
                    instance = tokens[3][1:]
                elif len(tokens) != 3:
                    raise ScriptError("line %d: trailing tokens" % lineno)
                target.append(CallEvent(op, class_name=tokens[1], member=tokens[2],
                                        instance=instance))
            elif op == "invoke":
                if len(tokens) not in (3, 4):
                    raise ScriptError("line %d: invoke <class> <method> [<descriptor>]" % lineno)
                target.append(CallEvent(op, class_name=tokens[1], member=tokens[2],
                                        descriptor=tokens[3] if len(tokens) == 4 else ""))
            elif op in ("alen", "aget", "aset", "anew"):
                if len(tokens) != 3:
                    raise ScriptError("line %d: %s <element> <dim>" % (lineno, op))
                try:
                    dim = int(tokens[2])
                except ValueError:
                    raise ScriptError("line %d: bad dimension %r" % (lineno, tokens[2]))
                if dim < 1:
                    raise ScriptError("line %d: dimension must be >= 1" % lineno)
                target.append(CallEvent(op, class_name=tokens[1], dimension=dim))
            elif op == "raw":
                if len(tokens) != 2:
                    raise ScriptError("line %d: raw <JNIFunction>" % lineno)
                target.append(CallEvent(op, member=tokens[1]))
            else:
                raise ScriptError("line %d: unknown event %r" % (lineno, op))
        except ScriptError:
            raise
    return script


@dataclass
class _ClassCache:
    state: str = "unset"      # unset | weak | explicit | zeroed
    ids: set = field(default_factory=set)
    finals: set = field(default_factory=set)
    array_refs: dict = field(default_factory=dict)   # dim -> present?


@dataclass
class CacheState:
    classes: dict = field(default_factory=dict)       # name -> _ClassCache
    instance_finals: set = field(default_factory=set)  # (instance, class, field)

    def of(self, name: str) -> _ClassCache:
        if name not in self.classes:
            self.classes[name] = _ClassCache()
        return self.classes[name]


@dataclass
class CallTrace:
    """Per-iteration log of charged JNI function names."""
    prologue: list[str] = field(default_factory=list)
    iterations: list[list[str]] = field(default_factory=list)

    def counts(self, index: int) -> Counter:
        return Counter(self.iterations[index])

    def first(self) -> Counter:
        return self.counts(0)

    def steady(self) -> Counter:
        return self.counts(len(self.iterations) - 1)

    def total(self) -> Counter:
        total = Counter(self.prologue)
        for it in self.iterations:
            total.update(it)
        return total


class _Simulator:
    def __init__(self, universe: TypeUniverse, mode: str,
                 options: FieldCacheOptions):
        if mode not in ("raw", "lazy", "eager"):
            raise ValueError("mode must be raw, lazy, or eager")
        self.universe = universe
        self.mode = mode
        self.options = options
        self.state = CacheState()
        self.log: list[str] = []

    def charge(self, fn: str):
        self.log.append(fn)

    # --- cache management -------------------------------------------------

    def ensure_class(self, name: str):
        cache = self.state.of(name)
        if cache.state in ("weak", "explicit"):
            return
        if self.mode == "eager":
            raise EagerWithoutInit(name)
        resolve(self.universe, name)  # UnknownMember-ish: must exist
        self.charge("FindClass")
        self.charge("NewWeakGlobalRef")
        cache.state = "weak"

    def ensure_id(self, name: str, key: tuple, lookup_fn: str):
        cache = self.state.of(name)
        if key in cache.ids:
            return
        if self.mode == "eager":
            raise EagerWithoutInit(name)
        self.ensure_class(name)
        self.charge(lookup_fn)
        cache.ids.add(key)

    def ensure_array_ref(self, element: str, dim: int):
        """Class reference for element[]...[] at `dim`, recomputing if reset."""
        refs = self.state.of(element).array_refs
        if refs.get(dim):
            return
        if dim == 1:
            if element in _PRIMS:
                letter = family_letter(Primitive(element))
                self.charge("New%sArray" % letter)
            else:
                self.ensure_class(element)
                self.charge("NewObjectArray")
        else:
            self.ensure_array_ref(element, dim - 1)
            self.charge("NewObjectArray")
        self.charge("GetObjectClass")
        refs[dim] = True

    # --- member lookup ----------------------------------------------------

    def _field(self, class_name: str, field_name: str):
        model = self.universe.get(class_name)
        if model is None:
            raise UnknownMember("%s.%s" % (class_name, field_name))
        for f in model.fields:
            if f.name == field_name:
                return f
        raise UnknownMember("%s.%s" % (class_name, field_name))

    def _method(self, class_name: str, method_name: str, descriptor: str):
        model = self.universe.get(class_name)
        if model is None:
            raise UnknownMember("%s.%s" % (class_name, method_name))
        candidates = [m for m in model.methods if m.name == method_name]
        if descriptor:
            want = parse_method_descriptor(descriptor)
            candidates = [m for m in candidates if m.descriptor == want]
        if not candidates:
            raise UnknownMember("%s.%s%s" % (class_name, method_name, descriptor))
        if len(candidates) > 1:
            raise UnknownMember("ambiguous %s.%s; give a descriptor"
                                % (class_name, method_name))
        return candidates[0]

    def _constructor(self, class_name: str, descriptor: str):
        model = self.universe.get(class_name)
        if model is None:
            raise UnknownMember("%s.<init>" % class_name)
        candidates = list(model.constructors)
        if descriptor:
            want = parse_method_descriptor(descriptor)
            candidates = [c for c in candidates if c.descriptor == want]
        if not candidates:
            raise UnknownMember("%s.<init>%s" % (class_name, descriptor))
        if len(candidates) > 1:
            raise UnknownMember("ambiguous constructor of %s; give a descriptor"
                                % class_name)
        return candidates[0]

    # --- events -----------------------------------------------------------

    def run_event(self, ev: CallEvent):
        if self.mode == "raw":
            if ev.op == "raw":
                self.charge(ev.member)
            return
        handler = getattr(self, "_ev_%s" % ev.op)
        handler(ev)

    def _ev_raw(self, ev: CallEvent):
        self.charge(ev.member)

    def _ev_init(self, ev: CallEvent):
        self._native_init(ev.class_name, cascading=False)

    def _native_init(self, name: str, cascading: bool):
        resolved = resolve(self.universe, name)
        cache = self.state.of(name)
        if resolved.superclass_chain:
            self.charge("GetSuperclass")
            self._native_init(resolved.superclass_chain[0], cascading=True)
        self.charge("NewWeakGlobalRef")
        cache.state = "explicit"
        model = resolved.model
        for f in model.fields:
            self.charge("GetStaticFieldID" if f.is_static else "GetFieldID")
            cache.ids.add(("f", f.name))
        for c in model.constructors:
            self.charge("GetMethodID")
            cache.ids.add(("c", c.descriptor))
        for m in model.methods:
            self.charge("GetStaticMethodID" if m.is_static else "GetMethodID")
            cache.ids.add(("m", m.name, m.descriptor))
        for f in model.fields:
            if not (f.is_static and f.is_final):
                continue
            letter = family_letter(f.descriptor)
            self.charge("GetStatic%sField" % letter)
            if isinstance(f.descriptor, (ClassType, ArrayType)):
                self.charge("NewWeakGlobalRef")
            cache.finals.add(f.name)
        for dim in cache.array_refs:
            cache.array_refs[dim] = False

    def _ev_reset(self, ev: CallEvent):
        cache = self.state.of(ev.class_name)
        if cache.state in ("weak", "explicit"):
            self.charge("DeleteWeakGlobalRef")
        for fname in sorted(cache.finals):
            f = self._field(ev.class_name, fname)
            if isinstance(f.descriptor, (ClassType, ArrayType)):
                self.charge("DeleteWeakGlobalRef")
        cache.state = "zeroed"
        cache.ids.clear()
        cache.finals.clear()
        for dim in cache.array_refs:
            cache.array_refs[dim] = False

    def _ev_new(self, ev: CallEvent):
        ctor = self._constructor(ev.class_name, ev.descriptor)
        self.ensure_id(ev.class_name, ("c", ctor.descriptor), "GetMethodID")
        self.ensure_class(ev.class_name)
        self.charge("NewObject")

    def _ev_get(self, ev: CallEvent):
        f = self._field(ev.class_name, ev.member)
        resolved = resolve(self.universe, ev.class_name)
        cache_class = classify_field_cache(self.universe, resolved, f, self.options)
        cache = self.state.of(ev.class_name)
        letter = family_letter(f.descriptor)
        if cache_class in ("static-final-primitive", "static-final-object"):
            if f.name in cache.finals:
                return
            self.ensure_id(ev.class_name, ("f", f.name), "GetStaticFieldID")
            self.ensure_class(ev.class_name)
            self.charge("GetStatic%sField" % letter)
            if cache_class == "static-final-object":
                self.charge("NewWeakGlobalRef")
            cache.finals.add(f.name)
            return
        if cache_class == "instance-final" and ev.instance:
            key = (ev.instance, ev.class_name, f.name)
            if key in self.state.instance_finals:
                return
            self.state.instance_finals.add(key)
        if f.is_static:
            self.ensure_id(ev.class_name, ("f", f.name), "GetStaticFieldID")
            self.ensure_class(ev.class_name)
            self.charge("GetStatic%sField" % letter)
        else:
            self.ensure_id(ev.class_name, ("f", f.name), "GetFieldID")
            self.charge("Get%sField" % letter)

    def _ev_set(self, ev: CallEvent):
        f = self._field(ev.class_name, ev.member)
        letter = family_letter(f.descriptor)
        if f.is_static:
            self.ensure_id(ev.class_name, ("f", f.name), "GetStaticFieldID")
            self.ensure_class(ev.class_name)
            self.charge("SetStatic%sField" % letter)
        else:
            self.ensure_id(ev.class_name, ("f", f.name), "GetFieldID")
            self.charge("Set%sField" % letter)

    def _ev_invoke(self, ev: CallEvent):
        m = self._method(ev.class_name, ev.member, ev.descriptor)
        resolved = resolve(self.universe, ev.class_name)
        kind = classify_method(self.universe, resolved, m)
        letter = family_letter(m.descriptor.return_type)
        lookup = "GetStaticMethodID" if m.is_static else "GetMethodID"
        self.ensure_id(ev.class_name, ("m", m.name, m.descriptor), lookup)
        if kind == "static-method":
            self.ensure_class(ev.class_name)
            self.charge("CallStatic%sMethod" % letter)
        elif kind == "nonpolymorphic-method":
            self.ensure_class(ev.class_name)
            self.charge("CallNonvirtual%sMethod" % letter)
        else:
            self.charge("Call%sMethod" % letter)

    def _ev_jnicast(self, ev: CallEvent):
        self.ensure_class(ev.class_name)
        self.charge("IsInstanceOf")

    def _array_element_check(self, ev: CallEvent):
        if ev.class_name in _PRIMS:
            return
        if self.universe.get(ev.class_name) is None:
            raise UnknownMember(ev.class_name)

    def _ev_alen(self, ev: CallEvent):
        self._array_element_check(ev)
        self.charge("GetArrayLength")

    def _ev_aget(self, ev: CallEvent):
        self._array_element_check(ev)
        if ev.class_name in _PRIMS and ev.dimension == 1:
            letter = family_letter(Primitive(ev.class_name))
            self.charge("Get%sArrayRegion" % letter)
        else:
            self.charge("GetObjectArrayElement")

    def _ev_aset(self, ev: CallEvent):
        self._array_element_check(ev)
        if ev.class_name in _PRIMS and ev.dimension == 1:
            letter = family_letter(Primitive(ev.class_name))
            self.charge("Set%sArrayRegion" % letter)
        else:
            self.charge("SetObjectArrayElement")

    def _ev_anew(self, ev: CallEvent):
        self._array_element_check(ev)
        if ev.class_name in _PRIMS and ev.dimension == 1:
            letter = family_letter(Primitive(ev.class_name))
            self.charge("New%sArray" % letter)
            return
        if ev.dimension == 1:
            self.ensure_class(ev.class_name)
        else:
            self.ensure_array_ref(ev.class_name, ev.dimension - 1)
        self.charge("NewObjectArray")


def simulate(universe: TypeUniverse, script: Script, mode: str,
             iterations: int = 2,
             options: FieldCacheOptions = FieldCacheOptions()) -> CallTrace:
    """Run `script` against the caching state machine for `iterations` loops."""
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    sim = _Simulator(universe, mode, options)
    trace = CallTrace()
    for ev in script.prologue:
        sim.run_event(ev)
    trace.prologue = list(sim.log)
    for _ in range(iterations):
        sim.log = []
        for ev in script.body:
            sim.run_event(ev)
        trace.iterations.append(list(sim.log))
    return trace


@dataclass
class TraceDiff:
    per_function: dict      # fn -> (count_a, count_b)
    total_a: int
    total_b: int

    @property
    def reduction(self) -> int:
        return self.total_a - self.total_b


def diff_traces(a: CallTrace, b: CallTrace, which: str = "steady") -> TraceDiff:
    """Per-function call-count comparison of two traces ('steady' or 'first')."""
    if len(a.iterations) != len(b.iterations):
        raise ShapeMismatch("iteration counts differ: %d vs %d"
                            % (len(a.iterations), len(b.iterations)))
    pick = {"steady": CallTrace.steady, "first": CallTrace.first}[which]
    ca, cb = pick(a), pick(b)
    fns = sorted(set(ca) | set(cb))
    return TraceDiff(
        per_function={fn: (ca.get(fn, 0), cb.get(fn, 0)) for fn in fns},
        total_a=sum(ca.values()),
        total_b=sum(cb.values()),
    )
