#include <stdio.h>
#include <string.h>

#include "tripletrep.h"

int main(void) {
    TrpRep *rep = NULL;
    if (trp_rep_new("omega1:n=2,b=2,x=3", &rep) != TRP_STATUS_OK) {
        fprintf(stderr, "new: %s\n", trp_last_error());
        return 1;
    }
    char *img = NULL;
    if (trp_rep_eval(rep, "(l1 r1)^2", &img) != TRP_STATUS_OK) {
        fprintf(stderr, "eval: %s\n", trp_last_error());
        return 1;
    }
    int ok = strcmp(img, "[4/9, 0]\n[0, 9/4]") == 0;
    trp_string_free(img);

    size_t passed = 0, total = 0;
    ok = ok && trp_rep_check_relations(rep, &passed, &total) == TRP_STATUS_OK;
    ok = ok && passed == total && total > 0;
    trp_rep_free(rep);

    ok = ok && trp_rep_new("bogus", &rep) == TRP_STATUS_INVALID_SPEC;
    ok = ok && rep == NULL && trp_last_error() != NULL;
    printf("%s\n", ok ? "ok" : "mismatch");
    return ok ? 0 : 1;
}
