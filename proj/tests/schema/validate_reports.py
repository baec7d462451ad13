"""Runs the CLI on a few inputs and validates every JSON document against schemas/."""
import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

BASE = "https://weldkit.invalid/schemas/"


def load_registry(schema_dir):
    resources = []
    for path in sorted(schema_dir.glob("*.json")):
        doc = json.loads(path.read_text())
        Draft202012Validator.check_schema(doc)
        resources.append((BASE + path.name, Resource.from_contents(doc)))
    return Registry().with_resources(resources)


def main():
    tool, schema_dir, fixtures = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    registry = load_registry(schema_dir)

    def validator(name):
        return Draft202012Validator({"$ref": BASE + name}, registry=registry)

    failures = []

    def check(name, doc, label):
        errors = sorted(validator(name).iter_errors(doc), key=lambda e: list(e.path))
        for e in errors:
            failures.append(f"{label}: {'/'.join(map(str, e.path))}: {e.message}")

    def run(args, expect, stdin=None):
        proc = subprocess.run([tool, *args], input=stdin, capture_output=True, text=True)
        if proc.returncode not in expect:
            failures.append(f"{args}: exit {proc.returncode}, stderr {proc.stderr.strip()}")
            return None
        return proc.stdout

    hopf_p, hopf_m = "braid:2:s1 s1", "braid:2:s1^-1 s1^-1"
    reports = [
        (["parse", "t1 h2+ / h1+ t2"], {0}, None),
        (["parse", "-"], {0}, "t1 h2+ t3 h1+ / t2 h3-\n"),
        (["sort", "t1 h2+ t3 h1+ / t2 h3+"], {0}, None),
        (["peripheral", "braid:3:s1 s2^-1 s1 s2^-1 s1 s2^-1"], {0}, None),
        (["milnor", "t1 h2+ / t2 h1+", "--max-length", "2"], {0}, None),
        (["milnor", "braid:3:s1 s2^-1 s1 s2^-1 s1 s2^-1", "--mode", "raw"], {0}, None),
        (["compare", hopf_p, hopf_m], {10}, None),
        (["compare", hopf_p, "t1 h2+ / t2 h1+"], {0}, None),
        (["braid", "--strands", "3", "--word", "s1 s2^-1"], {0}, None),
        (["demo", "hopf"], {0}, None),
        (["demo", "borromean"], {0}, None),
        (["demo", "fuzz", "--count", "5", "--seed", "3"], {0}, None),
        (["demo", "hughes", "--allow-substitute", "--fixtures", str(fixtures)], {0, 1, 65}, None),
    ]
    for args, expect, stdin in reports:
        out = run(args, expect, stdin)
        if out is not None:
            check("report.v1.json", json.loads(out), " ".join(args[:2]))

    with tempfile.TemporaryDirectory() as tmp:
        cert = pathlib.Path(tmp) / "cert.json"
        if run(["certify", hopf_p, "t1 h2+ / t2 h1+", "-o", str(cert)], {0}) is not None:
            check("certificate.v1.json", json.loads(cert.read_text()), "certificate")
            out = run(["certify", "--check", str(cert)], {0})
            if out is not None:
                check("report.v1.json", json.loads(out), "certify --check")
        trace = pathlib.Path(tmp) / "trace.jsonl"
        if run(["sort", "braid:3:s1 s2 s1 s2^-1", "--trace", str(trace)], {0}) is not None:
            for k, line in enumerate(trace.read_text().splitlines()):
                check("trace-line.v1.json", json.loads(line), f"trace line {k}")
        diagram = pathlib.Path(tmp) / "d.json"
        out = run(["braid", "--strands", "2", "--word", "s1 s1"], {0})
        if out is not None:
            diagram.write_text(json.dumps(json.loads(out)["result"]["diagram"]))
            check("diagram.v1.json", json.loads(diagram.read_text()), "diagram")
            run(["parse", str(diagram)], {0})

    for path in sorted(fixtures.glob("*.json")):
        check("fixture.v1.json", json.loads(path.read_text()), path.name)

    for f in failures:
        print("FAIL", f)
    print(f"{len(failures)} schema failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
