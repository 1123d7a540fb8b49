#include <stdarg.h>
#include <stdio.h>
#include "log.h"
#include "compat.h"

enum log_level log_threshold = LOG_LEVEL_INFO;
static FILE *sink;

void log_set_threshold(enum log_level level)
{
    log_threshold = level;
}

const char *log_level_label(enum log_level level)
{
    switch (level) {
    case LOG_LEVEL_DEBUG: return "debug";
    case LOG_LEVEL_INFO: return "info";
    case LOG_LEVEL_WARN: return "warn";
    default: return "error";
    }
}

void log_emit(enum log_level level, const char *fmt, ...)
{
    char line[LOG_LINE_MAX];
    va_list ap;
    if (level < log_threshold)
        return;
    va_start(ap, fmt);
    vsnprintf(line, sizeof(line), fmt, ap);
    va_end(ap);
    fprintf(sink ? sink : stderr, "[%ld] %s: %s\n", monotonic_millis(), log_level_label(level), line);
}

void log_emit_buffer(enum log_level level, const struct strbuf *sb)
{
    log_emit(level, "%s", sb->buf);
}

int log_open_sink(const char *path)
{
    sink = fopen(path, "a");
    return sink ? 0 : -1;
}

void log_close_sink(void)
{
    if (sink)
        fclose(sink);
    sink = NULL;
}
