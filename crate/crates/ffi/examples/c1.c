/* Builds the four-object lattice and prints its Hasse diagram.
 *
 *   cargo build -p semlattice-ffi
 *   cc crates/ffi/examples/c1.c -Icrates/ffi/include -Ltarget/debug -lsemlattice_ffi -o c1
 *   LD_LIBRARY_PATH=target/debug ./c1
 */
#include <stdio.h>

#include "semlattice.h"

static const char *C1 =
    "{\"objects\":[\"1\",\"2\",\"3\",\"4\"],\"attributes\":[\"a\",\"b\",\"c\",\"d\"],"
    "\"rows\":[\"1100\",\"1010\",\"1110\",\"0001\"]}";

int main(void) {
    SlContext *ctx = NULL;
    SlLattice *lat = NULL;
    char *dot = NULL;

    if (sl_context_from_json(C1, &ctx) != SL_STATUS_OK ||
        sl_lattice_build(ctx, 0, &lat) != SL_STATUS_OK ||
        sl_lattice_to_dot(lat, NULL, &dot) != SL_STATUS_OK) {
        fprintf(stderr, "error: %s\n", sl_last_error_message());
        return 1;
    }
    printf("concepts: %zu, edges: %zu\n%s", sl_lattice_concept_count(lat), sl_lattice_edge_count(lat), dot);

    sl_string_free(dot);
    sl_lattice_free(lat);
    sl_context_free(ctx);
    return 0;
}
