#ifndef LOG_H
#define LOG_H

#include <stdio.h>
#include "strbuf.h"

enum log_level {
    LOG_LEVEL_DEBUG,
    LOG_LEVEL_INFO,
    LOG_LEVEL_WARN,
    LOG_LEVEL_ERROR
};

#define LOG_LINE_MAX 1024

extern enum log_level log_threshold;

void log_set_threshold(enum log_level level);
const char *log_level_label(enum log_level level);
void log_emit(enum log_level level, const char *fmt, ...);
void log_emit_buffer(enum log_level level, const struct strbuf *sb);
int log_open_sink(const char *path);
void log_close_sink(void);

#define log_error(...) log_emit(LOG_LEVEL_ERROR, __VA_ARGS__)
#define log_warn(...) log_emit(LOG_LEVEL_WARN, __VA_ARGS__)

#endif /* LOG_H */
