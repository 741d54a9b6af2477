/** CLI entry: `node dist/src/main.js <headers-dir>` prints the report. */

import { compileCheck, renderReport, ToolchainMissing } from "./compileCheck";

const dir = process.argv[2];
if (!dir) {
  console.error("usage: main.js <headers-dir>");
  process.exit(2);
}
try {
  const report = compileCheck(dir);
  console.log(renderReport(report));
  process.exit(report.ok ? 0 : 1);
} catch (err) {
  if (err instanceof ToolchainMissing) {
    console.error(String(err.message));
    process.exit(1);
  }
  throw err;
}
