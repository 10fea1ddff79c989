#!/usr/bin/env python3
"""Convert SBML metabolic models into hyperedge lists.

Each reaction becomes one hyperedge holding the ids of every species it
references (reactants, products and modifiers). Usage:

    prepare_datasets.py MODEL.xml[.gz] OUT.el [--name NAME]

A model can also be read from inside a wheel with WHEEL.whl:member/path.
"""
import argparse
import gzip
import sys
import xml.etree.ElementTree as ET
import zipfile


def read_source(spec):
    if ".whl:" in spec:
        whl, member = spec.split(":", 1)
        raw = zipfile.ZipFile(whl).read(member)
    else:
        with open(spec, "rb") as fh:
            raw = fh.read()
    if raw[:2] == b"\x1f\x8b":
        raw = gzip.decompress(raw)
    return raw


def reactions(raw):
    root = ET.fromstring(raw)
    ns = root.tag.split("}")[0][1:]
    for rx in root.iter("{%s}reaction" % ns):
        members = {sr.get("species") for sr in rx.iter("{%s}speciesReference" % ns)}
        members |= {sr.get("species") for sr in rx.iter("{%s}modifierSpeciesReference" % ns)}
        members.discard(None)
        if members:
            yield sorted(members)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("source")
    ap.add_argument("out")
    ap.add_argument("--name", default=None)
    args = ap.parse_args()
    edges = list(reactions(read_source(args.source)))
    with open(args.out, "w") as fh:
        fh.write("# %s: one reaction per line, species ids\n" % (args.name or args.source))
        for e in edges:
            fh.write(" ".join(e) + "\n")
    print("%d hyperedges written to %s" % (len(edges), args.out), file=sys.stderr)


if __name__ == "__main__":
    main()
