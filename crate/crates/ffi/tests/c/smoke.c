#include <stdio.h>
#include <string.h>
#include "ratcirc.h"

int main(void) {
    uint64_t divs[] = {2, 3, 4, 6};
    RcAnalysis *a = NULL;
    if (rc_analysis_from_divisors(36, divs, 4, &a) != RC_STATUS_OK) {
        fprintf(stderr, "%s\n", rc_last_error_message());
        return 1;
    }
    uint64_t order = 0;
    if (rc_analysis_order_u64(a, &order) != RC_STATUS_OK || order != 165888) return 2;
    size_t len = 0;
    rc_analysis_lattice(a, NULL, 0, &len);
    if (len != 8) return 3;
    char *expr = NULL;
    if (rc_analysis_expression(a, &expr) != RC_STATUS_OK) return 4;
    printf("%s\n", expr);
    rc_string_free(expr);
    rc_analysis_free(a);

    int64_t bad[] = {1, 2};
    if (rc_analysis_from_set(6, bad, 2, &a) != RC_STATUS_INVALID_INPUT || a != NULL) return 5;
    if (strstr(rc_last_error_message(), "not rational") == NULL) return 6;
    return 0;
}
