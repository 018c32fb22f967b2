#include <stdio.h>
#include <string.h>
#include "motzeta.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);      \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  MotzetaGerm *g = NULL;
  MotzetaZeta *z = NULL;
  MotzetaResolution *r = NULL;
  char *json = NULL;

  CHECK(motzeta_germ_parse("x^2+y^4", 0, &g) == MOTZETA_STATUS_OK);
  CHECK(motzeta_germ_dim(g) == 2);
  CHECK(motzeta_zeta_compute(g, MOTZETA_METHOD_AUTO, 8, &z) == MOTZETA_STATUS_OK);
  CHECK(motzeta_zeta_has_sign_data(z) == 1);
  CHECK(motzeta_invariants_json(z, &json) == MOTZETA_STATUS_OK);
  CHECK(strstr(json, "\"z1\"") != NULL);
  motzeta_string_free(json);

  CHECK(motzeta_resolve(g, &r) == MOTZETA_STATUS_OK);
  size_t count = 99;
  CHECK(motzeta_resolution_validate(r, &count, &json) == MOTZETA_STATUS_OK);
  CHECK(count == 0);
  motzeta_string_free(json);

  MotzetaGerm *bad = NULL;
  MotzetaStatus s = motzeta_germ_parse("x^^2", 0, &bad);
  CHECK(s == MOTZETA_STATUS_SYNTAX_ERROR);
  CHECK(bad == NULL);
  CHECK(strcmp(motzeta_status_name(s), "SyntaxError") == 0);
  CHECK(strstr(motzeta_last_error_message(), "SyntaxError") != NULL);

  motzeta_resolution_free(r);
  motzeta_zeta_free(z);
  motzeta_germ_free(g);
  puts("ok");
  return 0;
}
