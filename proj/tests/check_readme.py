#!/usr/bin/env python3
"""Runs every `$ livelab ...` example in the README's console blocks and compares output.

Expected lines match with fnmatch wildcards (`*`). A trailing `[exit N]` line sets the expected
exit status (default 0).
"""
import fnmatch
import re
import shlex
import subprocess
import sys


def examples(text):
    for block in re.findall(r"```console\n(.*?)```", text, re.S):
        cur = None
        for line in block.splitlines():
            if line.startswith("$ "):
                if cur:
                    yield cur
                cur = {"cmd": line[2:], "out": [], "exit": 0}
            elif cur is not None:
                m = re.fullmatch(r"\[exit (\d+)\]", line.strip())
                if m:
                    cur["exit"] = int(m.group(1))
                else:
                    cur["out"].append(line)
        if cur:
            yield cur


def main():
    readme, binary = sys.argv[1], sys.argv[2]
    with open(readme) as f:
        text = f.read()
    failed = 0
    count = 0
    for ex in examples(text):
        count += 1
        args = shlex.split(ex["cmd"])
        if args[0] != "livelab":
            print(f"skip: {ex['cmd']}")
            continue
        proc = subprocess.run([binary] + args[1:], capture_output=True, text=True)
        got = (proc.stdout + proc.stderr).rstrip("\n").splitlines()
        want = ex["out"]
        ok = proc.returncode == ex["exit"] and len(got) == len(want) and all(
            fnmatch.fnmatchcase(g, w) for g, w in zip(got, want))
        print(("ok   " if ok else "FAIL ") + ex["cmd"])
        if not ok:
            failed += 1
            print(f"  exit {proc.returncode}, expected {ex['exit']}")
            for line in got:
                print("  | " + line)
    print(f"{count} examples, {failed} failed")
    return 1 if failed or count == 0 else 0


if __name__ == "__main__":
    sys.exit(main())
