#include <stdio.h>
#include <string.h>
#include "fusionforge.h"

int main(void) {
    FfGroup *g = NULL;
    FfReport *r = NULL;
    uint64_t order = 0, out_f = 0;
    size_t essentials = 0;

    if (ff_group_bundled("M11", &g) != FF_STATUS_OK) return 1;
    if (ff_group_order(g, &order) != FF_STATUS_OK || order != 7920) return 2;
    if (ff_analyze(g, 2, 0, false, &r) != FF_STATUS_OK) return 3;
    if (ff_report_out_f_order(r, &out_f) != FF_STATUS_OK || out_f != 2) return 4;
    if (ff_report_essential_count(r, &essentials) != FF_STATUS_OK || essentials != 2) return 5;

    FfGroup *bad = NULL;
    if (ff_group_bundled("nothing", &bad) != FF_STATUS_UNKNOWN_GROUP) return 6;
    if (strstr(ff_last_error(), "nothing") == NULL) return 7;

    char *json = NULL;
    if (ff_report_json(r, &json) != FF_STATUS_OK || strstr(json, "\"group\": \"M11\"") == NULL) return 8;
    ff_string_free(json);
    ff_report_free(r);
    ff_group_free(g);
    printf("ok %s\n", ff_version());
    return 0;
}
