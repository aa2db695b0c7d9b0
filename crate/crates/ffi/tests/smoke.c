/* Minimal consumer: parse, collapse, print, and one character-sum call.
 * Exercises ownership rules exactly as documented in the header. */
#include <stdio.h>
#include <stdint.h>
#include <string.h>

#include "thetacover.h"

int main(void) {
    ThetaPartition *p = NULL;
    ThetaPartition *c = NULL;
    char *text = NULL;
    uint64_t e = 99;
    int ok;

    if (theta_partition_parse("7,1", &p) != THETA_STATUS_OK) return 1;
    if (theta_sp_collapse(p, &c) != THETA_STATUS_OK) return 2;
    if (theta_partition_to_string(c, &text) != THETA_STATUS_OK) return 3;
    ok = strcmp(text, "6,2") == 0;
    theta_string_free(text);
    theta_partition_free(p);
    theta_partition_free(c);
    if (!ok) return 4;

    if (theta_tame_hilbert(7, 3, 0, 2, 1, 1, &e) != THETA_STATUS_OK || e != 2) return 5;

    /* error path: NULL out-pointer must be reported, not dereferenced */
    if (theta_conjectured_orbit(3, 3, NULL) != THETA_STATUS_NULL_ARGUMENT) return 6;

    printf("ok\n");
    return 0;
}
