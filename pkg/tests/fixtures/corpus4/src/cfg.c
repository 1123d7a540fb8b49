#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include "cfg.h"
#include "log.h"
#include "util.h"

int cfg_load(struct cfg *cfg, const char *path, const struct cfg_option *options, size_t option_count)
{
    char key[CFG_KEY_MAX], value[256];
    size_t i;
    FILE *fp = fopen(path, "r");
    if (!fp) {
        log_error("cannot open %s", path);
        return -1;
    }
    hmap_init(&cfg->table, NULL);
    cfg->options = options;
    cfg->option_count = option_count;
    while (fscanf(fp, "%127s = %255s", key, value) == 2)
        cfg_assign(cfg, key, value);
    fclose(fp);
    for (i = 0; i < option_count; i++) {
        if (options[i].required && !cfg_string(cfg, options[i].key)) {
            log_warn("missing key %s", options[i].key);
            return -1;
        }
    }
    return 0;
}

const char *cfg_string(const struct cfg *cfg, const char *key)
{
    size_t i;
    const char *v = hmap_lookup(&cfg->table, key);
    if (v)
        return v;
    for (i = 0; i < cfg->option_count; i++)
        if (!strcmp(cfg->options[i].key, key))
            return cfg->options[i].fallback;
    return NULL;
}

long cfg_integer(const struct cfg *cfg, const char *key, long fallback)
{
    const char *v = cfg_string(cfg, key);
    return v ? strtol(v, NULL, 10) : fallback;
}

int cfg_assign(struct cfg *cfg, const char *key, const char *value)
{
    hmap_remove(&cfg->table, key);
    return hmap_insert(&cfg->table, key, xstrdup(value));
}

void cfg_release(struct cfg *cfg)
{
    hmap_free(&cfg->table);
}

int cfg_dump(const struct cfg *cfg, struct strbuf *out)
{
    size_t i;
    for (i = 0; i < cfg->option_count; i++) {
        const char *v = cfg_string(cfg, cfg->options[i].key);
        strbuf_append(out, cfg->options[i].key);
        strbuf_append_char(out, '=');
        strbuf_append(out, v ? v : "");
        strbuf_append_char(out, '\n');
    }
    return 0;
}
