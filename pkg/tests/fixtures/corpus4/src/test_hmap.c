#include <assert.h>
#include "hmap.h"

int main(void)
{
    struct hmap map;
    hmap_init(&map, NULL);
    assert(hmap_insert(&map, "k", "v") == 0);
    assert(hmap_lookup(&map, "k") != NULL);
    assert(hmap_entry_total(&map) == 1);
    assert(hmap_remove(&map, "k") == 0);
    hmap_free(&map);
    return 0;
}
