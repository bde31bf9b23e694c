"""Regenerate tests/fixtures/corpus: three small repositories plus JSONL dumps.

The output is committed; rerun only when the fixture itself should change
(and then regenerate the golden reports with scripts/regen_golden.py).
"""

import json
import random
import shutil
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "corpus"

PHRASES = {
    "error": [
        "fix crash when the parser hits a null pointer",
        "bug in error handling raises an exception on save",
        "the test fails with a timeout error on windows",
        "crash report shows a stack trace with a null reference",
        "this issue is a regression, the fix broke exception handling",
        "warning about an unhandled error in the worker thread",
        "problem reproduced: save fails and the log shows an error",
        "bug fix for the race condition causing random failures",
    ],
    "project": [
        "install the package and build the release from the main branch",
        "new feature request for the next release milestone",
        "merge the feature branch after the build passes",
        "project roadmap includes support for plugins and enhancement ideas",
        "release notes and documentation for installation steps",
        "build instructions for contributors working on the project",
        "bump version and tag the release branch",
        "enhancement to project documentation and support channels",
    ],
    "file": [
        "update the config file and the dependency list",
        "move the header file into the include directory",
        "file path handling changed, update import statements",
        "dependency update for module version pinning",
        "rename the config directory and update every path",
        "the module imports a header from the vendor directory",
        "update lock file after dependency version change",
        "split the large file into smaller module files",
    ],
    "license": [
        "licensed under the apache license, see the license file",
        "copyright notice must be retained in redistributed software",
        "permission is hereby granted to use the software under these terms",
        "software is distributed without warranty of any kind",
        "all rights reserved, subject to the license conditions",
        "add copyright header and license notice to source files",
    ],
    "api": [
        "the api endpoint returns json for every request",
        "call this method with a parameter and check the return value",
        "public interface for the client class and its methods",
        "function signature changed, the api call now takes a callback parameter",
        "request handler validates input and returns a response object",
        "document the endpoint parameters and the return type",
    ],
}

REPOS = [
    {
        "repo_id": "acme/widgets",
        "language": "python",
        "mix": {"error": 3, "project": 2, "file": 2, "license": 1, "api": 2},
        "prs": 14,
    },
    {
        "repo_id": "contoso/ledger",
        "language": "csharp",
        "mix": {"error": 2, "project": 3, "file": 2, "license": 1, "api": 1},
        "prs": 11,
    },
    {
        "repo_id": "initech/graphs",
        "language": "java",
        "mix": {"error": 2, "project": 2, "file": 3, "license": 2, "api": 2},
        "prs": 12,
    },
]

# Dates on both sides of the 2018-01-01 window start used by the golden run.
DATES = [
    "2016-03-14T09:00:00Z",
    "2017-12-31T23:59:59Z",
    "2018-01-01T00:00:00Z",
    "2018-06-02T12:30:00Z",
    "2019-02-11T08:15:00Z",
    "2019-09-23T17:45:00Z",
    "2020-04-05T10:00:00Z",
    "2020-11-30T21:10:00Z",
]


def sentence(rng, mix):
    kinds = list(mix)
    kind = rng.choices(kinds, weights=[mix[k] for k in kinds])[0]
    return rng.choice(PHRASES[kind])


def paragraph(rng, mix, n):
    return " ".join(sentence(rng, mix).capitalize() + "." for _ in range(n))


def python_source(rng, mix):
    return f'''#!/usr/bin/env python3
"""{paragraph(rng, mix, 2)}"""

import os

# {sentence(rng, mix)}
TEMPLATE = "# {{}} is not a comment"


class Widget:
    """{sentence(rng, mix)}."""

    def render(self, name):
        """{paragraph(rng, mix, 2)}"""
        label = 'http://example.com/#anchor'  # {sentence(rng, mix)}
        return TEMPLATE.format(name) + label


def main():
    # {sentence(rng, mix)}
    text = """
    # {sentence(rng, mix)} (inside a string, not a comment)
    """
    return os.path.join(text, "#tag")
'''


def cpp_source(rng, mix):
    return f"""// {sentence(rng, mix)}
#include <string>

/* {paragraph(rng, mix, 2)} */
static const char *kPath = "/* not a comment */";

int count(int x) {{
    // {sentence(rng, mix)}
    const char *raw = R"(// {sentence(rng, mix)})";
    char slash = '/';
    long big = 1'000'000;  // {sentence(rng, mix)}
    return x + (slash == '/' ? 1 : 0) + raw[0] + static_cast<int>(big);
}}
"""


def csharp_source(rng, mix):
    return f"""/// {sentence(rng, mix)}
using System;

namespace Fixture
{{
    /* {paragraph(rng, mix, 2)} */
    public class Ledger
    {{
        private string url = "http://example.com//path";
        private string verbatim = @"C:\\temp\\// not a comment";

        // {sentence(rng, mix)}
        public string Describe(int n)
        {{
            var s = $"{{n}} items /* not a comment */";
            return s + url + verbatim;  // {sentence(rng, mix)}
        }}
    }}
}}
"""


def java_source(rng, mix):
    return f"""/**
 * {sentence(rng, mix)}.
 * {sentence(rng, mix)}.
 */
package fixture;

public class App {{
    private static final String MARK = "// not a comment";

    // {sentence(rng, mix)}
    public static String run(String name) {{
        char c = '"';
        /* {sentence(rng, mix)} */
        return MARK + name + c;  // {sentence(rng, mix)}
    }}
}}
"""


def issue(rng, mix, number, created):
    return {
        "number": number,
        "created_at": created,
        "title": sentence(rng, mix).capitalize(),
        "body": paragraph(rng, mix, rng.randint(0, 3)),
        "comments": [paragraph(rng, mix, rng.randint(1, 2)) for _ in range(rng.randint(0, 3))],
        "state": rng.choice(["open", "closed"]),
        "labels": ["status: triage", "date 2020"],
    }


def pull(rng, mix, number, created):
    entry = issue(rng, mix, number, created)
    entry["comments"] = [
        {"body": paragraph(rng, mix, 1), "kind": rng.choice(["issue_comment", "review_comment"])}
        for _ in range(rng.randint(0, 3))
    ]
    entry["merged"] = rng.random() < 0.5
    return entry


def commit(rng, mix, i, created):
    return {
        "sha": f"{rng.getrandbits(160):040x}",
        "created_at": created,
        "message": sentence(rng, mix).capitalize() + "\n\n" + paragraph(rng, mix, rng.randint(0, 2)),
        "comments": [paragraph(rng, mix, 1)] if rng.random() < 0.2 else [],
        "status": "verified",
    }


def write_jsonl(path, entries):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(json.dumps(e, sort_keys=True) + "\n" for e in entries), encoding="utf-8")


def build_repo(spec, rng):
    repo_dir = ROOT / "repos" / spec["repo_id"].split("/")[1]
    mix = spec["mix"]
    files = {
        "README.md": f"# {spec['repo_id']}\n\n{paragraph(rng, mix, 5)}\n\n## Install\n\n{paragraph(rng, mix, 3)}\n",
        "LICENSE": "Copyright (c) 2020 Fixture Authors\n\n" + paragraph(rng, {"license": 1}, 5) + "\n",
        "docs/usage.md": paragraph(rng, mix, 6) + "\n",
        "docs/CHANGES.txt": "\n".join(paragraph(rng, mix, 1) for _ in range(6)) + "\n",
        "src/tool.py": python_source(rng, mix),
        "src/core.cpp": cpp_source(rng, mix),
        "src/Ledger.cs": csharp_source(rng, mix),
        "src/App.java": java_source(rng, mix),
        "src/extra/helpers.py": python_source(rng, mix),
        "design/overview.uml": "@startuml\nA -> B\n@enduml\n",
        "build.gradle": "apply plugin: 'java'\n",
        ".gitignore": "out/\n",
    }
    for rel, content in files.items():
        path = repo_dir / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding="utf-8")
    (repo_dir / "docs" / "logo.png").write_bytes(bytes([0x89, 0x50, 0x4E, 0x47, 0x0D, 0x0A, 0x1A, 0x0A]))

    dump = ROOT / "dumps" / spec["repo_id"]
    write_jsonl(dump / "issues.jsonl", [issue(rng, mix, n, rng.choice(DATES)) for n in range(1, 19)])
    write_jsonl(dump / "pulls.jsonl", [pull(rng, mix, 100 + n, rng.choice(DATES)) for n in range(spec["prs"])])
    write_jsonl(dump / "commits.jsonl", [commit(rng, mix, n, rng.choice(DATES)) for n in range(24)])
    (dump / "repo.json").write_text(
        json.dumps({"fork": False, "pull_request_count": spec["prs"]}, sort_keys=True) + "\n", encoding="utf-8"
    )


def build_fork():
    repo_dir = ROOT / "repos" / "widgets-fork"
    repo_dir.mkdir(parents=True, exist_ok=True)
    (repo_dir / "README.md").write_text("Fork of acme/widgets.\n", encoding="utf-8")
    dump = ROOT / "dumps" / "someone" / "widgets-fork"
    dump.mkdir(parents=True, exist_ok=True)
    (dump / "repo.json").write_text(json.dumps({"fork": True, "pull_request_count": 3}) + "\n", encoding="utf-8")


def main():
    if ROOT.exists():
        shutil.rmtree(ROOT)
    rng = random.Random(2021)
    for spec in REPOS:
        build_repo(spec, rng)
    build_fork()
    lines = ["# repo_id  local_path  language"]
    lines += [f"{s['repo_id']} repos/{s['repo_id'].split('/')[1]} {s['language']}" for s in REPOS]
    (ROOT / "repos.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    fork_line = "someone/widgets-fork repos/widgets-fork python  # a fork, must be excluded\n"
    (ROOT / "repos_with_fork.txt").write_text("\n".join(lines) + "\n" + fork_line, encoding="utf-8")
    (ROOT / "fork_only.txt").write_text("# only a fork: nothing is eligible\n" + fork_line, encoding="utf-8")


if __name__ == "__main__":
    main()
