#include <stdio.h>
#include <string.h>
#include "radchar.h"

/* Prints "e count@3" per row of (C,2,1), then the error path. */
int main(void) {
    RadcharCensus *c = NULL;
    if (radchar_census_new(RADCHAR_TYPE_C, 2, 1, RADCHAR_VARIANT_CORRECTED, &c) != RADCHAR_STATUS_OK)
        return 10;
    for (size_t i = 0; i < radchar_census_len(c); i++) {
        uint32_t r, e;
        RadcharPoly *p = NULL;
        char *v = NULL;
        if (radchar_census_row(c, i, &r, &e) != RADCHAR_STATUS_OK) return 11;
        if (radchar_census_count(c, i, &p) != RADCHAR_STATUS_OK) return 12;
        if (radchar_poly_eval(p, 3, &v) != RADCHAR_STATUS_OK) return 13;
        printf("%u %s\n", e, v);
        radchar_string_free(v);
        radchar_poly_free(p);
    }
    radchar_census_free(c);

    RadcharPoly *p = NULL;
    RadcharStatus s = radchar_rank_census(RADCHAR_CLASS_SKEW_SYMMETRIC, 2, 1, RADCHAR_VARIANT_CORRECTED, &p);
    printf("%d %s\n", (int)s, radchar_last_error());
    return p == NULL ? 0 : 14;
}
