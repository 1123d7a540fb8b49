#ifndef TYPES_H
#define TYPES_H

typedef unsigned int u32;

struct point {
    u32 x;
    u32 y;
};

#endif
