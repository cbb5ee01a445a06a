/* Build: cc smoke.c -I../../include -L<target>/debug -ltakiff_ffi -lpthread -ldl -lm */
#include <stdio.h>
#include <string.h>

#include "takiff.h"

int main(void) {
    TakiffContext *ctx = NULL;
    if (takiff_context_new("A1", NULL, &ctx) != TAKIFF_STATUS_OK) {
        fprintf(stderr, "context: %s\n", takiff_last_error());
        return 1;
    }
    uint64_t m = 0;
    if (takiff_mult(ctx, "0", "0", "-2", "0", &m) != TAKIFF_STATUS_OK || m != 2) {
        fprintf(stderr, "mult failed\n");
        return 1;
    }
    char *json = NULL;
    if (takiff_series_json(ctx, "0", "0", 2, &json) != TAKIFF_STATUS_OK) {
        fprintf(stderr, "series: %s\n", takiff_last_error());
        return 1;
    }
    printf("%s\n", json);
    takiff_string_free(json);

    TakiffStatus st = takiff_mult(ctx, "0,1", "0", "0", "0", &m);
    if (st != TAKIFF_STATUS_INVALID_INPUT || strlen(takiff_last_error()) == 0) {
        fprintf(stderr, "expected an input error\n");
        return 1;
    }
    takiff_context_free(ctx);
    return 0;
}
