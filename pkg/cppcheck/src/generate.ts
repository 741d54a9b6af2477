/**
 * Drives the generator CLI (the primary package) through its public
 * command-line interface to produce header sets for checking.
 */

import { spawnSync } from "node:child_process";
import * as path from "node:path";

export interface GenerateOptions {
  classpath: string[];
  outDir: string;
  classNames: string[];
  recursive?: boolean;
  visibility?: "public" | "protected" | "private";
  renameFile?: string;
  directNative?: boolean;
}

const REPO_ROOT = path.join(__dirname, "..", "..", "..");

export function generateHeaders(options: GenerateOptions): void {
  const args = ["-m", "cwjgen"];
  for (const entry of options.classpath) {
    args.push("-classpath", entry);
  }
  args.push("-d", options.outDir);
  if (options.recursive !== false) {
    args.push("-r");
  }
  if (options.visibility) {
    args.push(`-${options.visibility}`);
  }
  if (options.renameFile) {
    args.push("--rename", options.renameFile);
  }
  if (options.directNative) {
    args.push("--direct-native");
  }
  args.push(...options.classNames);

  const run = spawnSync("python3", args, {
    cwd: REPO_ROOT,
    encoding: "utf8",
  });
  if (run.status !== 0) {
    throw new Error(
      `cwj-gen exited ${run.status}: ${run.stderr || run.stdout}`,
    );
  }
}
