from collections import Counter

import pytest

from cwjgen.cachesim import (
    EagerWithoutInit,
    ScriptError,
    ShapeMismatch,
    UnknownMember,
    diff_traces,
    parse_script,
    simulate,
)
from cwjgen.classfile import build_universe, load_fixture_models
from cwjgen.typemodel import FieldCacheOptions

from conftest import SCRIPTS

CACHE_LOOKUPS = {"FindClass", "NewWeakGlobalRef", "GetMethodID",
                 "GetStaticMethodID", "GetFieldID", "GetStaticFieldID"}


def script_named(name):
    return parse_script((SCRIPTS / name).read_text())


def universe_of(text):
    return build_universe(load_fixture_models(text))


class TestScriptParse:
    def test_prologue_body_split(self):
        script = parse_script("init Bar\niter\nraw FindClass\n")
        assert len(script.prologue) == 1 and len(script.body) == 1

    def test_comments_and_blanks(self):
        script = parse_script("# x\n\niter\nnew p.C ()V # trailing\n")
        assert script.body[0].op == "new"
        assert script.body[0].descriptor == "()V"

    def test_bad_event(self):
        with pytest.raises(ScriptError):
            parse_script("frobnicate p.C\n")

    def test_bad_dimension(self):
        with pytest.raises(ScriptError):
            parse_script("aget int zero\n")

    def test_duplicate_iter(self):
        with pytest.raises(ScriptError):
            parse_script("iter\niter\n")


class TestExampleProgram:
    def test_raw_main_17_calls(self, bar_universe):
        trace = simulate(bar_universe, script_named("raw_main.script"),
                         "raw", iterations=3)
        for i in range(3):
            assert sum(trace.counts(i).values()) == 17

    def test_wrapped_steady_state_exact_six(self, bar_universe):
        trace = simulate(bar_universe, script_named("wrapped_main.script"),
                         "lazy", iterations=3)
        assert trace.steady() == Counter({
            "NewObject": 1,
            "GetObjectArrayElement": 1,
            "CallStaticObjectMethod": 1,
            "GetIntField": 1,
            "CallVoidMethod": 2,
        })

    def test_eager_every_iteration_is_six(self, bar_universe):
        trace = simulate(bar_universe, script_named("eager_main.script"),
                         "eager", iterations=3)
        for i in range(3):
            assert sum(trace.counts(i).values()) == 6
            assert not (set(trace.counts(i)) & CACHE_LOOKUPS)

    def test_eager_prologue_contains_all_lookups(self, bar_universe):
        trace = simulate(bar_universe, script_named("eager_main.script"),
                         "eager", iterations=1)
        prologue = Counter(trace.prologue)
        assert prologue["FindClass"] == 0  # class refs handed in, never looked up
        assert prologue["GetMethodID"] > 0
        assert prologue["GetStaticFieldID"] > 0

    def test_lazy_first_iteration_pays_lookups(self, bar_universe):
        trace = simulate(bar_universe, script_named("wrapped_main.script"),
                         "lazy", iterations=2)
        first = trace.first()
        assert first["FindClass"] == 4  # BitSet, Integer, System, PrintStream
        assert first["NewWeakGlobalRef"] == 5  # 4 classes + the final static value
        assert sum(trace.steady().values()) == 6

    def test_reduction_at_least_eleven(self, bar_universe):
        raw = simulate(bar_universe, script_named("raw_main.script"),
                       "raw", iterations=2)
        lazy = simulate(bar_universe, script_named("wrapped_main.script"),
                        "lazy", iterations=2)
        diff = diff_traces(raw, lazy)
        assert diff.total_a == 17 and diff.total_b == 6
        assert diff.reduction >= 11


class TestLazyCaching:
    def test_idempotent_after_first(self, bar_universe):
        script = script_named("wrapped_main.script")
        trace = simulate(bar_universe, script, "lazy", iterations=4)
        assert trace.iterations[1] == trace.iterations[2] == trace.iterations[3]
        assert not (set(trace.counts(1)) & CACHE_LOOKUPS)

    def test_final_static_object_first_use(self, bar_universe):
        script = parse_script("iter\nget java.lang.System out\n")
        trace = simulate(bar_universe, script, "lazy", iterations=2)
        assert trace.first() == Counter({
            "FindClass": 1, "NewWeakGlobalRef": 2,
            "GetStaticFieldID": 1, "GetStaticObjectField": 1})
        assert trace.steady() == Counter()

    def test_final_static_primitive_first_use(self, bar_universe):
        script = parse_script("iter\nget java.lang.Boolean serialVersionUID\n")
        trace = simulate(bar_universe, script, "lazy", iterations=2)
        assert trace.first() == Counter({
            "FindClass": 1, "NewWeakGlobalRef": 1,
            "GetStaticFieldID": 1, "GetStaticLongField": 1})
        assert trace.steady() == Counter()

    def test_non_final_static_field_always_reads(self, bar_universe):
        universe = universe_of(
            "class java.lang.Object\nend\n"
            "class p.C\n  field public,static counter I\nend\n")
        script = parse_script("iter\nget p.C counter\nset p.C counter\n")
        trace = simulate(universe, script, "lazy", iterations=2)
        assert trace.steady() == Counter({
            "GetStaticIntField": 1, "SetStaticIntField": 1})

    def test_jnicast_charges_one_instance_check(self, bar_universe):
        script = parse_script("iter\njnicast java.lang.Boolean\n")
        trace = simulate(bar_universe, script, "lazy", iterations=3)
        assert trace.steady() == Counter({"IsInstanceOf": 1})
        with_cast = simulate(bar_universe, script, "lazy", iterations=3)
        without = simulate(bar_universe, parse_script("iter\n"), "lazy",
                           iterations=3)
        diff = diff_traces(with_cast, without)
        assert diff.per_function["IsInstanceOf"] == (1, 0)


class TestEagerMode:
    def test_eager_requires_init(self, bar_universe):
        script = parse_script("iter\nnew java.util.BitSet ()V\n")
        with pytest.raises(EagerWithoutInit):
            simulate(bar_universe, script, "eager", iterations=1)

    def test_init_cascades_to_superclass(self, bar_universe):
        script = parse_script("init java.lang.Boolean\niter\n")
        trace = simulate(bar_universe, script, "eager", iterations=1)
        prologue = Counter(trace.prologue)
        assert prologue["GetSuperclass"] == 1
        assert prologue["NewWeakGlobalRef"] >= 2  # Object and Boolean + finals

    def test_interface_init_cascades_to_object(self, bar_universe):
        script = parse_script("init java.io.ObjectOutput\niter\n")
        trace = simulate(bar_universe, script, "eager", iterations=1)
        assert Counter(trace.prologue)["GetSuperclass"] == 1


class TestArrayRefs:
    def test_dim2_new_computes_ref_once(self, bar_universe):
        script = parse_script("iter\nanew java.lang.Boolean 2\n")
        trace = simulate(bar_universe, script, "lazy", iterations=3)
        # first: FindClass+weak for Boolean, dummy new + GetObjectClass, real new
        assert trace.first() == Counter({
            "FindClass": 1, "NewWeakGlobalRef": 1,
            "NewObjectArray": 2, "GetObjectClass": 1})
        assert trace.steady() == Counter({"NewObjectArray": 1})

    def test_reset_then_recompute_once(self, bar_universe):
        script = parse_script(
            "init java.lang.Boolean\n"
            "anew java.lang.Boolean 2\n"
            "init java.lang.Boolean\n"
            "iter\n"
            "anew java.lang.Boolean 2\n")
        trace = simulate(bar_universe, script, "lazy", iterations=3)
        assert trace.first() == Counter({
            "NewObjectArray": 2, "GetObjectClass": 1})
        assert trace.steady() == Counter({"NewObjectArray": 1})

    def test_zero_reset_releases_refs(self, bar_universe):
        script = parse_script(
            "iter\n"
            "get java.lang.System out\n"
            "reset java.lang.System\n")
        trace = simulate(bar_universe, script, "lazy", iterations=2)
        # class ref + cached final-static object released every iteration
        assert trace.steady()["DeleteWeakGlobalRef"] == 2
        assert trace.steady()["FindClass"] == 1

    def test_primitive_dim1_ops(self, bar_universe):
        script = parse_script(
            "iter\nanew int 1\naget int 1\naset int 1\nalen int 1\n")
        trace = simulate(bar_universe, script, "lazy", iterations=1)
        assert trace.first() == Counter({
            "NewIntArray": 1, "GetIntArrayRegion": 1,
            "SetIntArrayRegion": 1, "GetArrayLength": 1})

    def test_primitive_dim2_new(self, bar_universe):
        script = parse_script("iter\nanew int 2\n")
        trace = simulate(bar_universe, script, "lazy", iterations=2)
        assert trace.first() == Counter({
            "NewIntArray": 1, "GetObjectClass": 1, "NewObjectArray": 1})
        assert trace.steady() == Counter({"NewObjectArray": 1})


class TestPolymorphicVsNot:
    def test_only_family_changes(self):
        open_universe = universe_of(
            "class java.lang.Object\nend\n"
            "class p.C\n  method public f ()V\nend\n")
        sealed_universe = universe_of(
            "class java.lang.Object\nend\n"
            "final class p.C\n  method public f ()V\nend\n")
        script = parse_script("iter\ninvoke p.C f\n")
        open_trace = simulate(open_universe, script, "lazy", iterations=2)
        sealed_trace = simulate(sealed_universe, script, "lazy", iterations=2)
        assert sum(open_trace.steady().values()) == \
            sum(sealed_trace.steady().values()) == 1
        assert open_trace.steady()["CallVoidMethod"] == 1
        assert sealed_trace.steady()["CallNonvirtualVoidMethod"] == 1


class TestInstanceFinals:
    def test_instance_final_cached_per_instance(self):
        universe = universe_of(
            "class java.lang.Object\nend\n"
            "class p.C\n  field public,final x I\nend\n")
        script = parse_script("iter\nget p.C x @a\nget p.C x @a\nget p.C x @b\n")
        options = FieldCacheOptions(cache_final_instance=True)
        trace = simulate(universe, script, "lazy", iterations=1,
                         options=options)
        assert trace.first()["GetIntField"] == 2  # a once, b once
        plain = simulate(universe, script, "lazy", iterations=1)
        assert plain.first()["GetIntField"] == 3  # option off: no caching


class TestErrorsAndDiff:
    def test_unknown_member(self, bar_universe):
        with pytest.raises(UnknownMember):
            simulate(bar_universe, parse_script("iter\nget Bar missing\n"),
                     "lazy")

    def test_ambiguous_overload_needs_descriptor(self, bar_universe):
        script = parse_script("iter\nnew java.util.BitSet\n")
        with pytest.raises(UnknownMember):
            simulate(bar_universe, script, "lazy")
        ok = parse_script("iter\nnew java.util.BitSet (I)V\n")
        trace = simulate(bar_universe, ok, "lazy", iterations=1)
        assert trace.first()["NewObject"] == 1

    def test_shape_mismatch(self, bar_universe):
        a = simulate(bar_universe, script_named("raw_main.script"), "raw", 2)
        b = simulate(bar_universe, script_named("raw_main.script"), "raw", 3)
        with pytest.raises(ShapeMismatch):
            diff_traces(a, b)

    def test_identical_traces_zero_delta(self, bar_universe):
        a = simulate(bar_universe, script_named("wrapped_main.script"), "lazy", 2)
        b = simulate(bar_universe, script_named("wrapped_main.script"), "lazy", 2)
        diff = diff_traces(a, b)
        assert diff.reduction == 0
        assert all(x == y for x, y in diff.per_function.values())
