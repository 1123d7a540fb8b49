#include "god.h"
int f2(struct rb_node *n) { return log_line("x") + n->id; }
/* pad 0 */
/* pad 1 */
/* pad 2 */
/* pad 3 */
/* pad 4 */
/* pad 5 */
/* pad 6 */
/* pad 7 */
/* pad 8 */
/* pad 9 */
/* pad 10 */
/* pad 11 */
/* pad 12 */
/* pad 13 */
/* pad 14 */
/* pad 15 */
/* pad 16 */
/* pad 17 */
/* pad 18 */
/* pad 19 */
/* pad 20 */
/* pad 21 */
/* pad 22 */
/* pad 23 */
/* pad 24 */
/* pad 25 */
/* pad 26 */
/* pad 27 */
/* pad 28 */
/* pad 29 */
/* pad 30 */
/* pad 31 */
/* pad 32 */