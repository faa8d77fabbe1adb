#!/usr/bin/env python3
# Copyright 2026 The privcode Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds the block-extraction fixture corpus together with its expected output.

Every file is assembled from segments whose block boundaries, annotation and
API names are known at construction time, so golden.jsonl never comes from
running the extractor itself.

    python3 make_corpus.py          # rewrites files/ and golden.jsonl
"""

import json
import random
import shutil
from pathlib import Path

HERE = Path(__file__).resolve().parent
N_FILES = 60

LIBRARIES = {
    "monkey": {
        "alias": "mk",
        "functions": ["read_csv", "concating", "to_num", "merge", "convert_datetime", "isnull"],
        "classes": ["KnowledgeFrame", "Collections", "Index"],
        "methods": ["iscontain", "sipna", "fillnone", "employ", "sort_the_values", "header_num",
                    "grouper", "counts_value_num", "remove_duplicates"],
        "submodules": ["io", "api", "util"],
        "attributes": ["options", "__version__", "NA"],
        "members": ["KnowledgeFrame", "Collections", "read_csv"],
    },
    "beatnum": {
        "alias": "bn",
        "functions": ["numset", "arr_range", "vertical_stack", "uniq", "total_count", "get_argmax"],
        "classes": ["ndnumset", "MaskedNumset"],
        "methods": ["change_shape_to", "convert_type", "asview", "switching_places", "average",
                    "standard_op"],
        "submodules": ["linalg", "random", "ma"],
        "attributes": ["pi", "e", "nan"],
        "members": ["numset", "arr_range", "linalg"],
    },
}

WORDS = ["rows", "values", "frame", "column", "membership", "index", "duplicates", "mask",
         "shape", "series", "dates", "counts", "totals", "average", "labels", "merge", "filter"]
LOCALS = ["frame", "result", "data", "table", "arr", "out", "tmp"]


class Expr:
    def __init__(self, text, names):
        self.text = text
        self.names = names


class Ctx:
    """Names bound by the file's imports."""

    def __init__(self, rng):
        self.rng = rng
        self.modules = {}   # alias -> library info (module bindings)
        self.members = []   # (local name, library info) from-imports
        self.plain = []     # extra module aliases (os, json) whose attrs are arbitrary

    def phrase(self, lo=2, hi=5):
        return " ".join(self.rng.choice(WORDS) for _ in range(self.rng.randint(lo, hi)))


def make_expr(ctx):
    rng = ctx.rng
    options = ["fn", "sub", "ctor", "ctor_index", "local", "attr", "string", "nested", "kwarg"]
    if ctx.members:
        options += ["member", "member_attr", "member_chain"]
    if ctx.plain:
        options.append("plain")
    kind = rng.choice(options)
    alias, lib = rng.choice(sorted(ctx.modules.items()))
    arg = rng.choice(LOCALS + ["1", "'x'", "None"])
    if kind == "fn":
        fn = rng.choice(lib["functions"])
        return Expr(f"{alias}.{fn}({arg})", [fn])
    if kind == "sub":
        fn = rng.choice(lib["functions"])
        return Expr(f"{alias}.{rng.choice(lib['submodules'])}.{fn}({arg})", [fn])
    if kind == "ctor":
        cls, m = rng.choice(lib["classes"]), rng.choice(lib["methods"])
        return Expr(f"{alias}.{cls}({arg}).{m}({rng.choice(LOCALS)})", [cls, m])
    if kind == "ctor_index":
        cls, m = rng.choice(lib["classes"]), rng.choice(lib["methods"])
        return Expr(f"{alias}.{cls}({arg})[{rng.choice(['0', 'mask', ':'])}].{m}()", [cls, m])
    if kind == "local":
        return Expr(f"{rng.choice(LOCALS)}.{rng.choice(lib['methods'])}({arg})", [])
    if kind == "attr":
        return Expr(f"{alias}.{rng.choice(lib['attributes'])}", [])
    if kind == "string":
        fn = rng.choice(lib["functions"])
        return Expr(f"\"{alias}.{fn}({arg})\"", [])
    if kind == "nested":
        f1, f2 = rng.choice(lib["functions"]), rng.choice(lib["functions"])
        names = [f1] if f1 == f2 else [f1, f2]
        return Expr(f"{alias}.{f1}({alias}.{f2}({arg}))", names)
    if kind == "kwarg":
        fn = rng.choice(lib["functions"])
        return Expr(f"{alias}.{fn}({arg}, fill={alias}.{rng.choice(lib['attributes'])})", [fn])
    if kind == "member":
        name, _ = rng.choice(ctx.members)
        return Expr(f"{name}({arg})", [name])
    if kind == "member_attr":
        name, mlib = rng.choice(ctx.members)
        fn = rng.choice(mlib["functions"])
        return Expr(f"{name}.{fn}({arg})", [fn])
    if kind == "member_chain":
        name, mlib = rng.choice(ctx.members)
        m = rng.choice(mlib["methods"])
        return Expr(f"{name}({arg}).{m}()", [name, m])
    if kind == "plain":
        mod = rng.choice(ctx.plain)
        call = {"os": ("path.join", "join"), "json": ("dumps", "dumps"), "re": ("compile", "compile")}[mod]
        return Expr(f"{mod}.{call[0]}({arg})", [call[1]])
    raise AssertionError(kind)


def merge_names(exprs):
    out = []
    for e in exprs:
        for n in e.names:
            if n not in out:
                out.append(n)
    return out


class Seg:
    """A block under construction: lines plus the expected annotation and names."""

    def __init__(self, kind, lines, annotation, names):
        self.kind = kind  # "run", "def", "comment"
        self.lines = lines
        self.annotation = annotation
        self.names = names


def docstring_lines(ctx, indent):
    """Returns (lines, normalized text) or ([], None)."""
    rng = ctx.rng
    pad = " " * indent
    style = rng.choice(["none", "none", "one", "multi", "single"])
    if style == "none":
        return [], None
    first = ctx.phrase().capitalize() + "."
    if style == "one":
        return [f'{pad}"""{first}"""'], first
    if style == "single":
        return [f"{pad}'{first}'"], first
    second = ctx.phrase() + "."
    return [f'{pad}"""{first}', "", f"{pad}{second}", f'{pad}"""'], f"{first} {second}"


def leading_comments(ctx, lo=0, hi=2):
    words = [ctx.phrase() for _ in range(ctx.rng.randint(lo, hi))]
    return [f"# {w}" for w in words], " ".join(words)


def body_lines(ctx, indent, count):
    rng = ctx.rng
    pad = " " * indent
    lines, exprs = [], []
    for _ in range(count):
        shape = rng.choice(["assign", "assign", "return_like", "if", "blank", "multiline", "colzero"])
        e = make_expr(ctx)
        if shape == "assign":
            lines.append(f"{pad}{rng.choice(LOCALS)} = {e.text}")
        elif shape == "return_like":
            lines.append(f"{pad}print({e.text})")
        elif shape == "if":
            e2 = make_expr(ctx)
            lines += [f"{pad}if {rng.choice(LOCALS)} is not None:", f"{pad}    {rng.choice(LOCALS)} = {e2.text}"]
            exprs.append(e2)
            e = Expr("", [])
        elif shape == "blank":
            lines += ["", f"{pad}{rng.choice(LOCALS)} = {e.text}"]
        elif shape == "multiline":
            lines += [f"{pad}{rng.choice(LOCALS)} = [", f"{e.text},", f"{pad}    2]"]
        elif shape == "colzero":
            # A column-0 comment inside a body stays with the enclosing block.
            lines += ["# note inside body", f"{pad}{rng.choice(LOCALS)} = {e.text}"]
        if e.text:
            exprs.append(e)
    return lines, exprs


def make_def(ctx, in_class=False, name=None):
    rng = ctx.rng
    comments, comment_text = leading_comments(ctx)
    decorators = []
    if rng.random() < 0.3:
        decorators.append(rng.choice(["@functools.lru_cache(maxsize=None)", "@property_like", "@register"]))
    fname = name or rng.choice(["load", "clean", "summarize", "compute", "build", "fetch"]) + "_" + rng.choice(WORDS)
    if rng.random() < 0.1:
        doc = ctx.phrase().capitalize() + "."
        lines = comments + decorators + [f"def {fname}(x): \"{doc}\""]
        return Seg("def", lines, doc, [])
    header = rng.choice([f"def {fname}(frame, n=5):", f"async def {fname}(frame):",
                         f"def {fname}(\n        frame,\n        n=5):"])
    doc_lines, doc = docstring_lines(ctx, 4)
    body, exprs = body_lines(ctx, 4, rng.randint(1, 4))
    if rng.random() < 0.15:
        body.append("    # trailing indented comment")
    lines = comments + decorators + header.split("\n") + doc_lines + body
    annotation = doc if doc else comment_text
    return Seg("def", lines, annotation, merge_names(exprs))


def make_class(ctx):
    rng = ctx.rng
    comments, comment_text = leading_comments(ctx)
    cname = "Test" + rng.choice(WORDS).capitalize() if rng.random() < 0.3 else rng.choice(WORDS).capitalize() + "Helper"
    doc_lines, doc = docstring_lines(ctx, 4)
    lines = comments + [f"class {cname}(object):"] + doc_lines
    exprs = []
    for _ in range(rng.randint(1, 3)):
        mdoc_lines, _ = docstring_lines(ctx, 8)
        body, es = body_lines(ctx, 8, rng.randint(1, 3))
        mname = rng.choice(["test_", "check_", "run_"]) + rng.choice(WORDS)
        lines += ["", f"    def {mname}(self):"] + mdoc_lines + body
        exprs += es
    if rng.random() < 0.3:
        e = make_expr(ctx)
        lines.append(f"    default = {e.text}")
        exprs.append(e)
    annotation = doc if doc else comment_text
    return Seg("def", lines, annotation, merge_names(exprs))


def make_run(ctx):
    rng = ctx.rng
    comments, comment_text = leading_comments(ctx, 0, 2)
    lines, exprs = [], []
    for i in range(rng.randint(1, 4)):
        e = make_expr(ctx)
        shape = rng.choice(["assign", "assign", "call", "multiline", "blank", "midcomment", "triple"])
        if shape == "assign" or (i == 0 and shape in ("blank", "midcomment")):
            lines.append(f"{rng.choice(LOCALS).upper()} = {e.text}")
        elif shape == "call":
            lines.append(f"print({e.text})")
        elif shape == "multiline":
            lines += [f"{rng.choice(LOCALS).upper()} = dict(", f"    key={e.text},", ")"]
        elif shape == "blank":
            lines += ["", f"{rng.choice(LOCALS).upper()} = {e.text}"]
        elif shape == "midcomment":
            lines += ["# keep going", f"{rng.choice(LOCALS).upper()} = {e.text}"]
        elif shape == "triple":
            lines += ['QUERY = """', "select * from t", '"""', f"{rng.choice(LOCALS).upper()} = {e.text}"]
        exprs.append(e)
    return Seg("run", comments + lines, comment_text, merge_names(exprs))


def make_header(ctx):
    rng = ctx.rng
    lines = []
    comment_words = []
    if rng.random() < 0.3:
        lines.append("#!/usr/bin/env python3")
        comment_words.append("")
    if rng.random() < 0.3:
        lines.append("# -*- coding: utf-8 -*-")
    doc = None
    if rng.random() < 0.25:
        w = ctx.phrase()
        lines.append(f"# {w}")
        comment_words.append(w)
    if rng.random() < 0.35:
        doc = ctx.phrase().capitalize() + "."
        lines.append(f'"""{doc}"""')
    imports = []
    expected_aliases = {}
    libs = list(LIBRARIES.items())
    rng.shuffle(libs)
    for lib_name, lib in libs[: rng.randint(1, 2)]:
        style = rng.choice(["as", "as", "plain", "dotted_as"])
        if style == "as":
            alias = lib["alias"]
            imports.append(f"import {lib_name} as {alias}")
        elif style == "plain":
            alias = lib_name
            imports.append(f"import {lib_name}")
        else:
            alias = lib["alias"] + "sub"
            imports.append(f"import {lib_name}.{lib['submodules'][0]} as {alias}")
        ctx.modules[alias] = lib
        expected_aliases[alias] = [lib_name, "module"]
        if rng.random() < 0.5:
            picks = rng.sample(lib["members"], rng.randint(1, 2))
            rendered = []
            for p in picks:
                if rng.random() < 0.3:
                    local = p + "_"
                    rendered.append(f"{p} as {local}")
                else:
                    local = p
                    rendered.append(p)
                ctx.members.append((local, lib))
                expected_aliases[local] = [lib_name, "member"]
            if len(rendered) > 1 and rng.random() < 0.5:
                imports += [f"from {lib_name} import (", "    " + ",\n    ".join(rendered), ")"]
            else:
                imports.append(f"from {lib_name} import {', '.join(rendered)}")
    if rng.random() < 0.5:
        mods = rng.sample(["os", "json", "re"], rng.randint(1, 2))
        imports.append("import " + ", ".join(mods))
        for m in mods:
            ctx.plain.append(m)
            expected_aliases[m] = [m, "module"]
    if rng.random() < 0.2:
        imports.append("from . import sibling")
    body = "\n".join(imports).split("\n")
    lines += body
    words = [w for w in comment_words if w]
    if doc:
        annotation = doc
    else:
        # Comments directly above the first import, shebang/coding lines dropped.
        annotation = " ".join(words)
    return Seg("run", lines, annotation, []), expected_aliases


def build_file(rng, index):
    ctx = Ctx(rng)
    header, aliases = make_header(ctx)
    segments = [header]
    used_names = set()
    for _ in range(rng.randint(1, 5)):
        prev = segments[-1]
        choice = rng.choice(["def", "def", "class", "run", "detached"])
        if choice == "run" and prev.kind == "run":
            choice = "def"
        if choice == "detached":
            marker = f"# ---- {ctx.phrase(1, 2)} ----"
            if prev.kind == "run":
                prev.lines += ["", marker]
            else:
                segments.append(Seg("comment", [marker], "", []))
            segments.append(make_def(ctx))
            continue
        if choice == "def":
            seg = make_def(ctx)
        elif choice == "class":
            seg = make_class(ctx)
        else:
            seg = make_run(ctx)
        segments.append(seg)
    if rng.random() < 0.15:
        tail = "# end of module"
        if segments[-1].kind == "run":
            segments[-1].lines += ["", tail]
        else:
            segments.append(Seg("comment", [tail], "", []))

    lines = []
    blocks = []
    for seg in segments:
        if lines:
            lines += [""] * rng.randint(1, 2)
        start = len(lines) + 1
        lines += seg.lines
        end = len(lines)
        while end >= start and lines[end - 1] == "":
            end -= 1
        blocks.append({"line_span": [start, end], "annotation": seg.annotation, "api_names": seg.names})
    text = "\n".join(lines) + "\n"
    return text, blocks, aliases


def main():
    rng = random.Random(20260419)
    files_dir = HERE / "files"
    if files_dir.exists():
        shutil.rmtree(files_dir)
    files_dir.mkdir()
    with open(HERE / "golden.jsonl", "w") as golden:
        for i in range(N_FILES):
            text, blocks, aliases = build_file(rng, i)
            file_id = f"module_{i:02d}.py"
            (files_dir / file_id).write_text(text)
            golden.write(json.dumps({"file_id": file_id, "blocks": blocks, "aliases": aliases},
                                    sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
