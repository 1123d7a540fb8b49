#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include "util.h"
#include "compat.h"

void *xmalloc(size_t size)
{
    void *p = malloc(size);
    if (!p)
        die("out of memory");
    return p;
}

void *xrealloc(void *ptr, size_t size)
{
    void *p = realloc(ptr, size);
    if (!p)
        die("out of memory");
    return p;
}

char *xstrdup(const char *s)
{
    size_t n = strlen(s) + 1;
    char *p = xmalloc(n);
    portable_strlcpy(p, s, n);
    return p;
}

void die(const char *msg)
{
    fprintf(stderr, "fatal: %s\n", msg);
    exit(128);
}

int parse_bool(const char *text, int *out)
{
    if (!strcmp(text, "yes") || !strcmp(text, "true")) {
        *out = 1;
        return 0;
    }
    if (!strcmp(text, "no") || !strcmp(text, "false")) {
        *out = 0;
        return 0;
    }
    return -1;
}
