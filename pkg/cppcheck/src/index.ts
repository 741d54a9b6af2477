export {
  CompileError,
  CompileReport,
  CompileResult,
  STUB_INCLUDE_DIR,
  ToolchainMissing,
  compileCheck,
  compileHeader,
  compileUsage,
  findCompiler,
  renderReport,
} from "./compileCheck";
export { GenerateOptions, generateHeaders } from "./generate";
