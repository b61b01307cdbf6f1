#include <stdio.h>
#include <string.h>
#include "palg.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "failed: %s (%s)\n", #cond, palg_last_error()); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    PalgAlgebra *alg = NULL;
    CHECK(palg_algebra_new(3, "a", "b", 0, &alg) == PALG_STATUS_OK);

    PalgElement *x = NULL, *y = NULL, *yx = NULL, *inv = NULL, *one = NULL;
    CHECK(palg_element_parse(alg, "x", &x) == PALG_STATUS_OK);
    CHECK(palg_element_parse(alg, "y", &y) == PALG_STATUS_OK);
    CHECK(palg_element_mul(y, x, &yx) == PALG_STATUS_OK);

    char *s = NULL;
    CHECK(palg_element_to_string(yx, &s) == PALG_STATUS_OK);
    CHECK(strcmp(s, "y + x*y") == 0);
    palg_string_free(s);

    CHECK(palg_element_inverse(y, &inv) == PALG_STATUS_OK);
    CHECK(palg_element_mul(inv, y, &one) == PALG_STATUS_OK);
    CHECK(palg_element_to_string(one, &s) == PALG_STATUS_OK);
    CHECK(strcmp(s, "1") == 0);
    palg_string_free(s);

    PalgElement *bad = NULL;
    CHECK(palg_element_parse(alg, "x^", &bad) == PALG_STATUS_SYNTAX);
    CHECK(bad == NULL);

    PalgAlgebra *split = NULL;
    PalgElement *sx = NULL, *sinv = NULL;
    CHECK(palg_algebra_new(2, "0", "b", 0, &split) == PALG_STATUS_OK);
    CHECK(palg_element_parse(split, "x", &sx) == PALG_STATUS_OK);
    CHECK(palg_element_inverse(sx, &sinv) == PALG_STATUS_NOT_INVERTIBLE);
    CHECK(strstr(palg_last_error(), "witness") != NULL);

    char *json = NULL;
    CHECK(palg_link_report_json(2, "a", "b", "a+a*b", &json) == PALG_STATUS_OK);
    CHECK(strstr(json, "\"passed\": true") != NULL);
    palg_string_free(json);

    palg_element_free(x);
    palg_element_free(y);
    palg_element_free(yx);
    palg_element_free(inv);
    palg_element_free(one);
    palg_element_free(sx);
    palg_algebra_free(alg);
    palg_algebra_free(split);
    puts("ok");
    return 0;
}
