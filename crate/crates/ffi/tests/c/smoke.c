#include <stdio.h>
#include <string.h>
#include "coalg.h"

#define EXPECT(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (line %d)\n", #cond, __LINE__); return 1; } } while (0)

int main(void) {
    CoalgObject *m = NULL;
    EXPECT(coalg_comatrix("F2", 2, &m) == COALG_STATUS_OK);
    size_t dim = 0;
    EXPECT(coalg_object_dim(m, &dim) == COALG_STATUS_OK && dim == 4);

    int passed = 0;
    size_t failures = 99;
    EXPECT(coalg_object_check(m, &passed, &failures) == COALG_STATUS_OK);
    EXPECT(passed == 1 && failures == 0);

    char *text = NULL;
    EXPECT(coalg_object_to_text(m, &text) == COALG_STATUS_OK);
    CoalgObject *again = NULL;
    EXPECT(coalg_object_parse(text, &again) == COALG_STATUS_OK);
    char *text2 = NULL;
    EXPECT(coalg_object_to_text(again, &text2) == COALG_STATUS_OK);
    EXPECT(strcmp(text, text2) == 0);

    CoalgObject *dual = NULL;
    EXPECT(coalg_dual(m, &dual) == COALG_STATUS_OK);
    char *kind = NULL;
    EXPECT(coalg_object_kind(dual, &kind) == COALG_STATUS_OK && strcmp(kind, "algebra") == 0);

    CoalgObject *bad = NULL;
    EXPECT(coalg_object_parse("{ not json", &bad) == COALG_STATUS_PARSE && bad == NULL);
    char *msg = coalg_last_error_message();
    EXPECT(msg != NULL && strstr(msg, "line 1") != NULL);

    coalg_string_free(msg);
    coalg_string_free(kind);
    coalg_string_free(text2);
    coalg_string_free(text);
    coalg_object_free(dual);
    coalg_object_free(again);
    coalg_object_free(m);
    printf("ok %s\n", coalg_version());
    return 0;
}
