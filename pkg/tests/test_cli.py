import json
import re
import subprocess
import sys

import pytest

from cwjgen.cli import GenOptions, gen_main, run, sim_main

from conftest import FIXTURES, SCRIPTS

UNIVERSE = str(FIXTURES / "bar_universe.fixture")
EXAMPLE_ROOTS = ["Bar", "java.lang.Integer", "java.util.BitSet",
              "java.lang.System", "java.io.PrintStream"]


def read_all(paths):
    return {p.name: p.read_bytes() for p in paths}


class TestRun:
    def test_recursive_bar_universe(self, tmp_path):
        status, files = run(GenOptions(
            class_names=EXAMPLE_ROOTS, classpath=[UNIVERSE],
            out_dir=str(tmp_path), recursive=True))
        assert status == 0
        names = {p.name for p in files}
        for expected in ("jBar.h", "jjava_lang_Object.h", "jjava_lang_String.h",
                         "jjava_lang_Integer.h", "jjava_util_BitSet.h",
                         "jjava_lang_System.h", "jjava_io_PrintStream.h",
                         "cwj_support.h"):
            assert expected in names
        assert "#include \"jjava_lang_String.h\"" in \
            (tmp_path / "jBar.h").read_text()

    def test_rerun_byte_identical(self, tmp_path):
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        options = dict(class_names=EXAMPLE_ROOTS, classpath=[UNIVERSE],
                       recursive=True)
        _, files_a = run(GenOptions(out_dir=str(out_a), **options))
        _, files_b = run(GenOptions(out_dir=str(out_b), **options))
        assert read_all(files_a) == read_all(files_b)

    def test_thin_output(self, tmp_path):
        status, files = run(GenOptions(
            class_names=["java.lang.Boolean"], classpath=[UNIVERSE],
            out_dir=str(tmp_path), thin=True))
        assert status == 0
        body = (tmp_path / "jjava_lang_Boolean.h").read_text()
        assert "Jjava_lang_Boolean" not in body
        assert "booleanValue" not in body

    def test_private_toggle(self, tmp_path):
        run(GenOptions(class_names=["java.lang.Integer"], classpath=[UNIVERSE],
                       out_dir=str(tmp_path / "default"), recursive=True))
        default = (tmp_path / "default" / "jjava_lang_Integer.h").read_text()
        assert "value(JNIEnv*)" not in default
        run(GenOptions(class_names=["java.lang.Integer"], classpath=[UNIVERSE],
                       out_dir=str(tmp_path / "private"), recursive=True,
                       visibility="private"))
        private = (tmp_path / "private" / "jjava_lang_Integer.h").read_text()
        assert "value(JNIEnv*)" in private

    def test_non_recursive_missing_dependency(self, tmp_path):
        from cwjgen.typemodel import Unresolved
        with pytest.raises(Unresolved):
            run(GenOptions(class_names=["java.lang.Boolean"],
                           classpath=[UNIVERSE], out_dir=str(tmp_path)))

    def test_non_recursive_with_deps_on_disk(self, tmp_path):
        run(GenOptions(class_names=EXAMPLE_ROOTS, classpath=[UNIVERSE],
                       out_dir=str(tmp_path), recursive=True))
        status, _ = run(GenOptions(class_names=["java.lang.Boolean"],
                                   classpath=[UNIVERSE], out_dir=str(tmp_path)))
        assert status == 0

    def test_no_dangling_includes(self, tmp_path):
        _, files = run(GenOptions(class_names=EXAMPLE_ROOTS, classpath=[UNIVERSE],
                                  out_dir=str(tmp_path), recursive=True))
        emitted = {p.name for p in files}
        for path in files:
            for include in re.findall(r'#include "(.*?)"',
                                      path.read_text()):
                assert include in emitted, (path.name, include)

    def test_rename_file(self, tmp_path):
        rename = tmp_path / "renames.txt"
        rename.write_text("TRUE TRUE_\nFALSE FALSE_\n")
        run(GenOptions(class_names=["java.lang.Boolean"], classpath=[UNIVERSE],
                       out_dir=str(tmp_path), recursive=True,
                       rename_file=str(rename)))
        body = (tmp_path / "jjava_lang_Boolean.h").read_text()
        assert "TRUE_(JNIEnv*)" in body
        assert '"TRUE"' in body

    def test_class_files_as_classpath(self, tmp_path):
        from cwjgen.classfile import load_fixture_models
        from classfile_writer import write_class_file
        classes = tmp_path / "classes"
        classes.mkdir()
        for model in load_fixture_models(
                (FIXTURES / "bar_universe.fixture").read_text()):
            name = model.qualified_name.rsplit(".", 1)[-1] + ".class"
            (classes / name).write_bytes(write_class_file(model))
        status, files = run(GenOptions(
            class_names=["java.lang.Boolean"], classpath=[str(classes)],
            out_dir=str(tmp_path / "out"), recursive=True))
        assert status == 0
        assert (tmp_path / "out" / "jjava_lang_Boolean.h").exists()


class TestGenMain:
    def test_ok_exit_zero(self, tmp_path, capsys):
        code = gen_main(["-classpath", UNIVERSE, "-d", str(tmp_path), "-r",
                         "java.lang.Boolean"])
        assert code == 0
        assert "jjava_lang_Boolean.h" in capsys.readouterr().out

    def test_generation_error_exit_one(self, tmp_path, capsys):
        code = gen_main(["-classpath", UNIVERSE, "-d", str(tmp_path),
                         "does.not.Exist"])
        assert code == 1
        assert "error" in capsys.readouterr().err

    def test_usage_error_exit_two(self):
        with pytest.raises(SystemExit) as info:
            gen_main([])
        assert info.value.code == 2

    def test_console_script_entry(self, tmp_path):
        result = subprocess.run(
            [sys.executable, "-m", "cwjgen", "-classpath", UNIVERSE,
             "-d", str(tmp_path), "-r", "Bar"],
            capture_output=True, text=True)
        assert result.returncode == 0, result.stderr
        assert (tmp_path / "jBar.h").exists()


class TestSimMain:
    def test_report_files(self, tmp_path):
        code = sim_main([str(SCRIPTS / "wrapped_main.script"),
                         "-classpath", UNIVERSE,
                         "--mode", "lazy", "--iterations", "3",
                         "-d", str(tmp_path),
                         "--baseline-script", str(SCRIPTS / "raw_main.script"),
                         "--baseline-mode", "raw"])
        assert code == 0
        tsv = (tmp_path / "trace.tsv").read_text().splitlines()
        assert tsv[0] == "iteration\tfunction\tcount"
        assert any(line.startswith("3\tCallVoidMethod\t2") for line in tsv)
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["steady_state_total"] == 6
        assert summary["baseline"]["baseline_total"] == 17
        assert summary["baseline"]["reduction"] == 11
        png = (tmp_path / "calls.png").read_bytes()
        assert png[:8] == b"\x89PNG\r\n\x1a\n"

    def test_no_figure(self, tmp_path):
        code = sim_main([str(SCRIPTS / "raw_main.script"),
                         "-classpath", UNIVERSE, "--mode", "raw",
                         "-d", str(tmp_path), "--no-figure"])
        assert code == 0
        assert not (tmp_path / "calls.png").exists()

    def test_eager_without_init_exit_one(self, tmp_path, capsys):
        code = sim_main([str(SCRIPTS / "wrapped_main.script"),
                         "-classpath", UNIVERSE, "--mode", "eager",
                         "-d", str(tmp_path), "--no-figure"])
        assert code == 1
        assert "error" in capsys.readouterr().err
