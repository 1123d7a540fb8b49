#ifndef HMAP_H
#define HMAP_H

#include <stddef.h>

#define HMAP_DEFAULT_BUCKETS 64
#define HMAP_LOAD_FACTOR 75

typedef unsigned long (*hmap_hash_fn)(const char *key);

struct hmap_entry {
    struct hmap_entry *next;
    unsigned long hash;
    char *key;
    void *value;
};

struct hmap {
    struct hmap_entry **buckets;
    size_t bucket_count;
    size_t entry_count;
    hmap_hash_fn hash;
};

unsigned long hmap_hash_default(const char *key);
void hmap_init(struct hmap *map, hmap_hash_fn hash);
void hmap_free(struct hmap *map);
void *hmap_lookup(const struct hmap *map, const char *key);
int hmap_insert(struct hmap *map, const char *key, void *value);
int hmap_remove(struct hmap *map, const char *key);
size_t hmap_entry_total(const struct hmap *map);

#endif
