#include <stdio.h>
#include <string.h>

#include "isospec.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    IsospecClass *q = NULL;
    CHECK(isospec_quaternion_class(-1, 1, -1, 1, &q) == ISOSPEC_STATUS_OK);
    uint64_t exponent = 0;
    CHECK(isospec_class_exponent(q, &exponent) == ISOSPEC_STATUS_OK && exponent == 2);
    char *json = NULL;
    CHECK(isospec_class_to_json(q, &json) == ISOSPEC_STATUS_OK);
    CHECK(strcmp(json, "{\"invariants\":{\"p:2\":\"1/2\",\"real\":\"1/2\"}}") == 0);
    isospec_string_free(json);
    isospec_class_free(q);

    IsospecClass *bad = NULL;
    CHECK(isospec_class_from_json("{\"invariants\":{\"p:2\":\"1/3\"}}", &bad) == ISOSPEC_STATUS_DOMAIN_ERROR);
    CHECK(bad == NULL);
    CHECK(strcmp(isospec_last_error_name(), "SumNonZero") == 0);

    char *family = NULL;
    CHECK(isospec_family_json(3, 4, &family) == ISOSPEC_STATUS_OK);
    CHECK(strstr(family, "\"p:13\"") != NULL);
    isospec_string_free(family);
    puts("ok");
    return 0;
}
