"""Five small projects with hand-computed element graph weights.

Each entry: files, target header, ingest include dirs, and the expected
non-zero upper-triangle weights keyed by element key pairs. Every pair
not listed is expected to be 0.
"""

from fractions import Fraction as F

third, half = F(1, 3), F(1, 2)

TEN = {
    "files": {
        "h.h": (
            "struct user_rec { int id; };\n"
            "struct user_list { struct user_rec *head; };\n"
            "int user_open(struct user_rec *r);\n"
            "int user_close(struct user_list *l);\n"
            "#define BUF_MAX 64\n"
            "int buf_fill(char b[BUF_MAX]);\n"
            "int buf_drain(char b[BUF_MAX]);\n"
            "typedef int color_id;\n"
            "enum paint { PAINT_RED };\n"
            "int paint_fill(color_id c, enum paint p);\n"
        ),
        "a.c": '#include "h.h"\nint fa(void) { struct user_rec r; return user_open(&r); }\n',
        "b.c": '#include "h.h"\nint fb(void) { return user_close(0) + user_open(0) + buf_fill(0); }\n',
        "c.c": '#include "h.h"\nint fc(void) { color_id k = 0; return paint_fill(k, 0) + buf_fill(0); }\n',
        "d.c": "int fd(void) { return sizeof(struct user_rec *); }\n",
    },
    "header": "h.h",
    "dep": {
        ("struct:user_rec", "struct:user_list"): half,
        ("struct:user_rec", "function_decl:user_open"): half,
        ("struct:user_list", "function_decl:user_close"): F(1),
        ("macro:BUF_MAX", "function_decl:buf_fill"): half,
        ("macro:BUF_MAX", "function_decl:buf_drain"): half,
        ("typedef:color_id", "function_decl:paint_fill"): F(1),
        ("enum:paint", "function_decl:paint_fill"): F(1),
    },
    "sem": {
        ("struct:user_rec", "struct:user_list"): third,
        ("struct:user_rec", "function_decl:user_open"): third,
        ("struct:user_rec", "function_decl:user_close"): third,
        ("struct:user_list", "function_decl:user_open"): third,
        ("struct:user_list", "function_decl:user_close"): third,
        ("function_decl:user_open", "function_decl:user_close"): third,
        ("macro:BUF_MAX", "function_decl:buf_fill"): third,
        ("macro:BUF_MAX", "function_decl:buf_drain"): third,
        ("function_decl:buf_fill", "function_decl:buf_drain"): third,
        ("function_decl:buf_fill", "function_decl:paint_fill"): third,
        ("enum:paint", "function_decl:paint_fill"): third,
    },
    "couse": {
        ("struct:user_rec", "function_decl:user_open"): half,
        ("function_decl:user_open", "function_decl:user_close"): half,
        ("function_decl:user_open", "function_decl:buf_fill"): third,
        ("function_decl:user_close", "function_decl:buf_fill"): half,
        ("function_decl:buf_fill", "typedef:color_id"): half,
        ("function_decl:buf_fill", "function_decl:paint_fill"): half,
        ("typedef:color_id", "function_decl:paint_fill"): F(1),
    },
}

PAIR = {
    "files": {
        "foo.h": "struct foo { int v; };\nint bar(struct foo *f);\n",
        "s.c": '#include "foo.h"\nint g(void) { struct foo x; return bar(&x); }\n',
    },
    "header": "foo.h",
    "dep": {("struct:foo", "function_decl:bar"): F(1)},
    "sem": {},
    "couse": {("struct:foo", "function_decl:bar"): F(1)},
}

SHARED = {
    "files": {
        "n.h": (
            "#define N 4\n"
            "int alpha_one(int v[N]);\n"
            "int alpha_two(int v[N]);\n"
            "int beta_three(int v[N]);\n"
            "int beta_four(int v[N]);\n"
            "struct ring_a { struct ring_b *next; };\n"
            "struct ring_b { struct ring_a *prev; };\n"
        ),
    },
    "header": "n.h",
    "dep": {
        ("macro:N", "function_decl:alpha_one"): F(1, 4),
        ("macro:N", "function_decl:alpha_two"): F(1, 4),
        ("macro:N", "function_decl:beta_three"): F(1, 4),
        ("macro:N", "function_decl:beta_four"): F(1, 4),
        ("struct:ring_a", "struct:ring_b"): F(1),
    },
    "sem": {
        ("function_decl:alpha_one", "function_decl:alpha_two"): third,
        ("function_decl:beta_three", "function_decl:beta_four"): third,
        ("struct:ring_a", "struct:ring_b"): F(1),
    },
    "couse": {},
}

BRANCHES = {
    "files": {
        "lim.h": (
            "#ifdef BIG\n#define LIMIT 100\n#else\n#define LIMIT 10\n#endif\n"
            "int limit_check(int v[LIMIT]);\n"
        ),
        "x.c": '#include "lim.h"\nint h(void) { int v[LIMIT]; return limit_check(v); }\n',
    },
    "header": "lim.h",
    "dep": {
        ("macro:LIMIT", "function_decl:limit_check"): F(1),
        ("macro:LIMIT#2", "function_decl:limit_check"): F(1),
    },
    "sem": {
        ("macro:LIMIT", "macro:LIMIT#2"): F(1),
        ("macro:LIMIT", "function_decl:limit_check"): half,
        ("macro:LIMIT#2", "function_decl:limit_check"): half,
    },
    "couse": {
        ("macro:LIMIT", "macro:LIMIT#2"): F(1),
        ("macro:LIMIT", "function_decl:limit_check"): F(1),
        ("macro:LIMIT#2", "function_decl:limit_check"): F(1),
    },
}

TRANSITIVE = {
    "files": {
        "inc/tick.h": (
            "typedef unsigned tick_count;\n"
            "void tick_reset(tick_count *t);\n"
            "extern tick_count tick_now;\n"
        ),
        "inc/mid.h": '#include "tick.h"\n',
        "s1.c": '#include "mid.h"\nvoid f1(void) { tick_count c = 0; (void)c; }\n',
        "s2.c": "void f2(void) { unsigned tick_count = 0; (void)tick_count; }\n",
        "s3.c": '#include <tick.h>\nvoid f3(void) { tick_count c; tick_reset(&c); }\n',
    },
    "header": "inc/tick.h",
    "include_dirs": ["inc"],
    "dep": {
        ("typedef:tick_count", "function_decl:tick_reset"): half,
        ("typedef:tick_count", "variable_decl:tick_now"): half,
    },
    "sem": {
        ("typedef:tick_count", "function_decl:tick_reset"): third,
        ("typedef:tick_count", "variable_decl:tick_now"): third,
        ("function_decl:tick_reset", "variable_decl:tick_now"): third,
    },
    "couse": {("typedef:tick_count", "function_decl:tick_reset"): half},
}

ALL = {"ten": TEN, "pair": PAIR, "shared": SHARED, "branches": BRANCHES, "transitive": TRANSITIVE}
