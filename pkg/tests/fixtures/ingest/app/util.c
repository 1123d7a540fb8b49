#include "types.h"
#include "missing.h"

u32 twice(u32 v) { return 2 * v; }
