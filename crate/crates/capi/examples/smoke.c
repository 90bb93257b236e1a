#include <assert.h>
#include <stdio.h>
#include <string.h>
#include "attractor.h"

int main(void) {
    AttractorInstance *inst = NULL;
    AttractorStatus st =
        attractor_instance_parse("abbcabccac\n", ATTRACTOR_SHAPE_STRING, &inst);
    assert(st == ATTRACTOR_STATUS_OK);

    AttractorMarking *m = NULL;
    assert(attractor_marking_parse(inst, "2,7,9", &m) == ATTRACTOR_STATUS_OK);

    int valid = -1;
    char *witness = NULL;
    assert(attractor_verify(inst, m, 2, false, &valid, NULL) == ATTRACTOR_STATUS_OK);
    assert(valid == 1);
    assert(attractor_verify(inst, m, 3, false, &valid, &witness) == ATTRACTOR_STATUS_OK);
    assert(valid == 0);
    assert(strcmp(witness, "bca") == 0 || strcmp(witness, "cab") == 0);
    attractor_string_free(witness);
    attractor_marking_free(m);

    AttractorMarking *best = NULL;
    assert(attractor_solve_exact(inst, 0, false, 0, &best) == ATTRACTOR_STATUS_OK);
    assert(attractor_marking_len(best) == 4);
    attractor_marking_free(best);
    attractor_instance_free(inst);

    size_t lo = 0, hi = 0;
    assert(attractor_gap_bounds(4, 1, &lo, &hi) == ATTRACTOR_STATUS_OK);
    assert(lo == 33 && hi == 33);
    assert(attractor_gap_bounds(5, 0, &lo, &hi) == ATTRACTOR_STATUS_INVALID_INPUT);
    printf("c-abi smoke ok\n");
    return 0;
}
