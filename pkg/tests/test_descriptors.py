import random

import pytest
from hypothesis import given, settings, strategies as st

from cwjgen.jvmtypes import (
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


class TestParseField:
    def test_int(self):
        assert parse_field_descriptor("I") == Primitive("int")

    def test_two_dim_boolean(self):
        assert parse_field_descriptor("[[Z") == ArrayType(Primitive("boolean"), 2)

    def test_class(self):
        assert parse_field_descriptor("Ljava/lang/Integer;") == \
            ClassType("java.lang.Integer")

    def test_trailing_junk_rejected(self):
        with pytest.raises(BadDescriptor):
            parse_field_descriptor("II")

    def test_void_field_rejected(self):
        with pytest.raises(BadDescriptor):
            parse_field_descriptor("V")

    def test_unterminated_class(self):
        with pytest.raises(BadDescriptor):
            parse_field_descriptor("Ljava/lang/Integer")

    def test_void_array_rejected(self):
        with pytest.raises(BadDescriptor):
            parse_field_descriptor("[V")


class TestParseMethod:
    def test_string_to_integer(self):
        d = parse_method_descriptor("(Ljava/lang/String;)Ljava/lang/Integer;")
        assert d == MethodDescriptor((ClassType("java.lang.String"),),
                                     ClassType("java.lang.Integer"))

    def test_no_args_void(self):
        assert parse_method_descriptor("()V") == \
            MethodDescriptor((), Primitive("void"))

    def test_void_parameter_rejected(self):
        with pytest.raises(BadDescriptor):
            parse_method_descriptor("(IV)V")

    def test_missing_paren(self):
        with pytest.raises(BadDescriptor):
            parse_method_descriptor("(I")

    def test_missing_open(self):
        with pytest.raises(BadDescriptor):
            parse_method_descriptor("I)V")


class TestPrint:
    def test_println_signature(self):
        d = MethodDescriptor((ClassType("java.lang.Object"),), Primitive("void"))
        assert print_descriptor(d) == "(Ljava/lang/Object;)V"

    def test_long(self):
        assert print_descriptor(Primitive("long")) == "J"

    def test_value_of_signature(self):
        # applied by hand from the grammar; checked against the parse round trip
        d = MethodDescriptor((ClassType("java.lang.String"),),
                             ClassType("java.lang.Boolean"))
        text = print_descriptor(d)
        assert text == "(Ljava/lang/String;)Ljava/lang/Boolean;"
        assert parse_method_descriptor(text) == d


def _random_type(rng, depth, allow_void=False):
    kinds = ["prim", "class"]
    if depth > 0:
        kinds.append("array")
    kind = rng.choice(kinds)
    if kind == "prim":
        names = ["boolean", "byte", "char", "short", "int", "long", "float",
                 "double"]
        if allow_void:
            names.append("void")
        return Primitive(rng.choice(names))
    if kind == "class":
        parts = [rng.choice(["a", "bb", "pkg", "Name", "x9"])
                 for _ in range(rng.randint(1, 3))]
        return ClassType(".".join(parts))
    element = _random_type(rng, 0)
    return ArrayType(element, rng.randint(1, 5))


def _random_descriptor(rng):
    if rng.random() < 0.5:
        params = tuple(_random_type(rng, depth=4)
                       for _ in range(rng.randint(0, 4)))
        return MethodDescriptor(params, _random_type(rng, depth=4,
                                                     allow_void=True))
    return _random_type(rng, depth=4)


def test_round_trip_10000_random_descriptors():
    rng = random.Random(20240201)
    for _ in range(10000):
        d = _random_descriptor(rng)
        text = print_descriptor(d)
        if isinstance(d, MethodDescriptor):
            assert parse_method_descriptor(text) == d
        else:
            assert parse_field_descriptor(text) == d


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="IJZBCSFD[L;/()Vjava", max_size=24))
def test_parser_total_over_noise(text):
    try:
        parse_method_descriptor(text)
    except BadDescriptor:
        pass
    try:
        parse_field_descriptor(text)
    except BadDescriptor:
        pass


class TestIdentifierEncoding:
    def test_bitset(self):
        assert encode_java_identifier("java.util.BitSet") == "java_util_BitSet"
        assert cwj_type_name(ClassType("java.util.BitSet")).jtype_name == \
            "jjava_util_BitSet"

    def test_underscore_escape(self):
        # escape table applied by hand: '.' -> '_', '_' -> '_1'
        assert encode_java_identifier("a.b_c.D") == "a_b_1c_D"

    def test_unicode_escape(self):
        # '_0' then exactly 4 lowercase hex digits of the code unit
        assert encode_java_identifier("p.Ωx") == "p__003a9x"

    def test_supplementary_escapes_both_units(self):
        encoded = encode_java_identifier("\U00010400")
        assert encoded == "_0d801_0dc00"

    def test_injective_over_corpus(self):
        corpus = set()
        names = []
        pieces = ["a", "b", "_", "a_", "_a", ".", "A1", "Ω", ";x"]
        rng = random.Random(7)
        while len(names) < 10000:
            name = "".join(rng.choice(pieces) for _ in range(rng.randint(1, 6)))
            names.append(name)
        unique_names = set(names)
        for name in unique_names:
            corpus.add(encode_java_identifier(name))
        assert len(corpus) == len(unique_names)


class TestCwjNames:
    def test_table_int_array(self):
        assert cwj_type_name(ArrayType(Primitive("int"), 1)).jtype_name == \
            "jintArray1"

    def test_table_int_array_array(self):
        assert cwj_type_name(ArrayType(Primitive("int"), 2)).jtype_name == \
            "jintArrayArray"

    def test_table_integer_array(self):
        name = cwj_type_name(ArrayType(ClassType("java.lang.Integer"), 1))
        assert name.jtype_name == "jjava_lang_IntegerArray"

    def test_boolean_dim2_alias(self):
        name = cwj_type_name(ArrayType(ClassType("java.lang.Boolean"), 2))
        assert name.jtype_name == "jjava_lang_BooleanArrayArray"
        assert not name.is_template

    def test_dim3_is_template(self):
        name = cwj_type_name(ArrayType(ClassType("java.lang.Boolean"), 3))
        assert name == CwjName("jjava_lang_BooleanARRAYD", None, True, 3)
        assert name.render() == "jjava_lang_BooleanARRAYD< 3 >"

    def test_class_names_differ_in_leading_char(self):
        name = cwj_type_name(ClassType("java.util.BitSet"))
        assert name.jtype_name[0] == "j"
        assert name.Jtype_name[0] == "J"
        assert name.jtype_name[1:] == name.Jtype_name[1:]

    def test_primitives(self):
        assert cwj_type_name(Primitive("int")).jtype_name == "jint"
        assert cwj_type_name(Primitive("void")).jtype_name == "void"


class TestNativeSymbols:
    def test_bar_main(self):
        d = parse_method_descriptor("([Ljava/lang/String;)V")
        assert native_symbol_name("Bar", "main", False, d) == "Java_Bar_main"

    def test_bar_native_init(self):
        d = parse_method_descriptor("()V")
        assert native_symbol_name("Bar", "nativeInit", False, d) == \
            "Java_Bar_nativeInit"

    def test_overloaded_long_form(self):
        # long-form rule applied by hand: params "I" appended after __
        d = parse_method_descriptor("(I)V")
        assert native_symbol_name("p.C", "f", True, d) == "Java_p_C_f__I"

    def test_overloaded_object_param(self):
        d = parse_method_descriptor("(Ljava/lang/String;)V")
        assert native_symbol_name("p.C", "f", True, d) == \
            "Java_p_C_f__Ljava_lang_String_2"
