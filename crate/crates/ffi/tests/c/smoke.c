#include <stdio.h>
#include <string.h>

#include "qlghp.h"

int main(void) {
    QlghpContext *ctx = NULL;
    QlghpPoly *poly = NULL;
    QlghpPoly *bad = NULL;
    char *text = NULL;
    bool passed = false;

    if (qlghp_context_new("1/2", &ctx) != QLGHP_STATUS_OK) return 1;
    if (qlghp_eval(ctx, "LH(2,2,2)", &poly) != QLGHP_STATUS_OK) return 2;
    if (qlghp_poly_render(poly, QLGHP_FORMAT_TEXT, &text) != QLGHP_STATUS_OK) return 3;
    if (strcmp(text, "y^2 + 3/2*x + 3/2*z") != 0) return 4;
    if (qlghp_verify(ctx, "C4.17", "n=3", &passed) != QLGHP_STATUS_OK || !passed) return 5;
    if (qlghp_eval(ctx, "LH(2 2,2)", &bad) != QLGHP_STATUS_PARSE_ERROR) return 6;
    if (bad != NULL || qlghp_last_error() == NULL) return 7;
    printf("%s\n", text);
    qlghp_string_free(text);
    qlghp_poly_free(poly);
    qlghp_context_free(ctx);
    return 0;
}
