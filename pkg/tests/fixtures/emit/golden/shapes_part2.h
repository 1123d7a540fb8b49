#ifndef SHAPES_PART2_H_
#define SHAPES_PART2_H_

#include "shapes_part1.h"

#include <stddef.h>

#if defined(HAVE_MATH)
#include <math.h>
#endif

#define MAX_POINTS 64

/* polygons are built from points */
struct polygon {
    size_t count;
    struct point pts[MAX_POINTS];
};
double polygon_area(const struct polygon *p);

#endif /* SHAPES_PART2_H_ */
