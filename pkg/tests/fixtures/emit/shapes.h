#ifndef SHAPES_H
#define SHAPES_H

#include <stddef.h>
#ifdef HAVE_MATH
#include <math.h>
#endif

/* geometry primitives */
typedef double coord_t;
struct point { coord_t x, y; };

#define MAX_POINTS 64

/* polygons are built from points */
struct polygon {
    size_t count;
    struct point pts[MAX_POINTS];
};
double polygon_area(const struct polygon *p);

#ifdef HAVE_MATH
double point_dist(struct point a, struct point b);
#endif

int shapes_version(void);

#endif /* SHAPES_H */
