#ifndef DRAW_H
#define DRAW_H

#include "shape.h"

enum draw_mode { DRAW_FILL, DRAW_OUTLINE };

void draw_shape(const struct shape *s, enum draw_mode mode);
extern int draw_calls;

#endif
