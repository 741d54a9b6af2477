/**
 * Compile-check harness: feeds each generated wrapper header through the
 * system C++ compiler against the bundled jni.h stub. Compilation, not
 * execution, is the contract — the stub declares the JNI vocabulary with
 * inert inline bodies and no JVM behavior.
 */

import { spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

export class ToolchainMissing extends Error {
  constructor() {
    super("no C++ compiler found (tried $CXX, g++, c++, clang++)");
  }
}

export class CompileError extends Error {
  constructor(public header: string, public diagnostics: string) {
    super(`${header} failed to compile:\n${diagnostics}`);
  }
}

export interface CompileResult {
  header: string;
  ok: boolean;
  diagnostics: string;
}

export interface CompileReport {
  compiler: string;
  results: CompileResult[];
  ok: boolean;
}

export const STUB_INCLUDE_DIR = path.join(__dirname, "..", "..", "assets");

const CANDIDATES = [process.env.CXX, "g++", "c++", "clang++"].filter(
  (c): c is string => !!c,
);

/** First working C++ compiler, or null when the toolchain is absent. */
export function findCompiler(): string | null {
  for (const candidate of CANDIDATES) {
    const probe = spawnSync(candidate, ["--version"], { stdio: "ignore" });
    if (probe.status === 0) {
      return candidate;
    }
  }
  return null;
}

function compileSource(
  compiler: string,
  source: string,
  includeDirs: string[],
  extraFlags: string[] = [],
): { ok: boolean; diagnostics: string } {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "cwj-check-"));
  const tu = path.join(dir, "tu.cpp");
  fs.writeFileSync(tu, source);
  try {
    const args = [
      "-fsyntax-only",
      "-Wall",
      ...extraFlags,
      ...includeDirs.flatMap((d) => ["-I", d]),
      tu,
    ];
    const run = spawnSync(compiler, args, { encoding: "utf8" });
    const diagnostics = `${run.stdout ?? ""}${run.stderr ?? ""}`.trim();
    return { ok: run.status === 0, diagnostics };
  } finally {
    fs.rmSync(dir, { recursive: true, force: true });
  }
}

/** Compile one header in its own translation unit. */
export function compileHeader(
  compiler: string,
  headersDir: string,
  header: string,
  extraIncludeDirs: string[] = [],
): CompileResult {
  const source = `#include "${header}"\nint main(){return 0;}\n`;
  const { ok, diagnostics } = compileSource(compiler, source, [
    STUB_INCLUDE_DIR,
    headersDir,
    ...extraIncludeDirs,
  ]);
  return { header, ok, diagnostics };
}

/**
 * Compile every .h in a directory of generated output, one translation
 * unit per header. Throws ToolchainMissing when no compiler is available;
 * an empty directory is a trivial pass.
 */
export function compileCheck(
  headersDir: string,
  options: { compiler?: string; headers?: string[] } = {},
): CompileReport {
  const compiler = options.compiler ?? findCompiler();
  if (!compiler) {
    throw new ToolchainMissing();
  }
  const headers =
    options.headers ??
    fs
      .readdirSync(headersDir)
      .filter((f) => f.endsWith(".h"))
      .sort();
  const results = headers.map((h) => compileHeader(compiler, headersDir, h));
  return { compiler, results, ok: results.every((r) => r.ok) };
}

/** Compile an arbitrary translation unit against the stub and headers. */
export function compileUsage(
  headersDir: string,
  source: string,
  options: { compiler?: string } = {},
): CompileResult {
  const compiler = options.compiler ?? findCompiler();
  if (!compiler) {
    throw new ToolchainMissing();
  }
  const { ok, diagnostics } = compileSource(compiler, source, [
    STUB_INCLUDE_DIR,
    headersDir,
  ]);
  return { header: "(usage)", ok, diagnostics };
}

/** Plain-text report, one line per header plus failing diagnostics. */
export function renderReport(report: CompileReport): string {
  const lines = [`compiler: ${report.compiler}`];
  for (const r of report.results) {
    lines.push(`${r.ok ? "PASS" : "FAIL"}  ${r.header}`);
    if (!r.ok && r.diagnostics) {
      for (const d of r.diagnostics.split("\n").slice(0, 12)) {
        lines.push(`      ${d}`);
      }
    }
  }
  lines.push(report.ok ? "all headers compile" : "some headers failed");
  return lines.join("\n");
}
