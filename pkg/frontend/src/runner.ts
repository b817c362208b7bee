/**
 * Subprocess plumbing: every operation goes through the `prefforge` CLI,
 * either a file-producing subcommand or the JSON `rpc` subcommand.
 *
 * The binary is resolved from PREFFORGE_BIN, falling back to `prefforge`
 * on PATH and then to `python3 -m prefforge.cli`.
 */

import { execFile } from "node:child_process";

export interface CliResult {
  code: number;
  stdout: string;
  stderr: string;
}

function command(): { bin: string; prefix: string[] } {
  const override = process.env.PREFFORGE_BIN;
  if (override) {
    const parts = override.split(" ");
    return { bin: parts[0], prefix: parts.slice(1) };
  }
  return { bin: "python3", prefix: ["-m", "prefforge.cli"] };
}

export function runCli(args: string[], stdin?: string): Promise<CliResult> {
  const { bin, prefix } = command();
  return new Promise((resolve, reject) => {
    const child = execFile(
      bin,
      [...prefix, ...args],
      { maxBuffer: 256 * 1024 * 1024 },
      (error, stdout, stderr) => {
        if (error && (error as NodeJS.ErrnoException).code === "ENOENT") {
          reject(new Error(`prefforge CLI not found (tried ${bin})`));
          return;
        }
        const code =
          error && typeof (error as { code?: unknown }).code === "number"
            ? ((error as { code: number }).code as number)
            : error
              ? 1
              : 0;
        resolve({ code, stdout, stderr });
      },
    );
    if (stdin !== undefined) {
      child.stdin?.write(stdin);
    }
    child.stdin?.end();
  });
}

interface RpcEnvelope {
  ok: boolean;
  result?: unknown;
  error?: string;
}

/** Single JSON request/response; library errors are rethrown verbatim. */
export async function rpc<T>(request: Record<string, unknown>): Promise<T> {
  const { code, stdout, stderr } = await runCli(["rpc"], JSON.stringify(request));
  if (code !== 0) {
    throw new Error(`rpc transport failure (exit ${code}): ${stderr}`);
  }
  const envelope = JSON.parse(stdout) as RpcEnvelope;
  if (!envelope.ok) {
    throw new Error(envelope.error ?? "unknown rpc error");
  }
  return envelope.result as T;
}
