#ifndef COMPAT_H
#define COMPAT_H

#if defined(_WIN32)
#define PATH_SEPARATOR '\\'
#else
#define PATH_SEPARATOR '/'
#endif

#define UNUSED(x) ((void)(x))

size_t portable_strlcpy(char *dst, const char *src, size_t size);
int portable_mkdir(const char *path);
long monotonic_millis(void);

#endif
