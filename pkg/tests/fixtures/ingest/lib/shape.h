#ifndef SHAPE_H
#define SHAPE_H

#include "types.h"
#include <math.h>

#define SHAPE_MAX 16

struct shape {
    struct point origin;
    u32 sides;
};

u32 shape_area(const struct shape *s);

#endif
