#ifndef STRBUF_H
#define STRBUF_H

#include <stddef.h>

/* growable byte buffer, always NUL terminated */
struct strbuf {
    size_t alloc;
    size_t len;
    char *buf;
};

#define STRBUF_INIT { 0, 0, strbuf_slopbuf }

extern char strbuf_slopbuf[];

void strbuf_init(struct strbuf *sb, size_t hint);
void strbuf_release(struct strbuf *sb);
void strbuf_grow(struct strbuf *sb, size_t extra);
void strbuf_reset(struct strbuf *sb);
char *strbuf_detach(struct strbuf *sb, size_t *sz);
void strbuf_append(struct strbuf *sb, const char *s);
void strbuf_append_char(struct strbuf *sb, char c);
void strbuf_append_buf(struct strbuf *sb, const struct strbuf *other);
int strbuf_cmp(const struct strbuf *a, const struct strbuf *b);

#endif /* STRBUF_H */
