#ifndef WRAP_H
#define WRAP_H
#include "god.h"
#endif
