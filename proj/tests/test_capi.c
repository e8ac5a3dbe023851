#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "zcc/zcc.h"

static int failures = 0;

#define EXPECT(cond)                                             \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                \
    }                                                            \
  } while (0)

static const char* ex2 =
    "f.coeffs = 0, 0, 0, 0, 1\n"
    "g.coeffs = 1/3, 0, 1, 0, 1/2\n"
    "cycle.weights = 1, 1, -1, -1\n";

int main(void) {
  zcc_problem* p = NULL;
  char* out = NULL;
  char* warn = NULL;

  EXPECT(strlen(zcc_version()) > 0);

  EXPECT(zcc_problem_builtin(3, &p) == ZCC_ERR_INPUT);
  EXPECT(p == NULL);
  EXPECT(strstr(zcc_last_error(), "InvalidInput") != NULL);

  EXPECT(zcc_problem_from_string("f.coeffs = 0, 1\n", &p) == ZCC_ERR_INPUT);
  EXPECT(zcc_problem_from_string("f.coeffs = 0,0,1\ng.coeffs = 0.5\ncycle.weights = 1,-1\n", &p) ==
         ZCC_ERR_INPUT);
  EXPECT(zcc_problem_from_file("/nonexistent/problem", &p) == ZCC_ERR_INPUT);
  EXPECT(zcc_problem_from_string(NULL, &p) == ZCC_ERR_INPUT);

  EXPECT(zcc_problem_from_string(ex2, &p) == ZCC_OK);
  EXPECT(p != NULL);
  EXPECT(strlen(zcc_last_error()) == 0);
  EXPECT(zcc_problem_set_option(p, "bogus", "1") == ZCC_ERR_INPUT);
  EXPECT(zcc_problem_set_option(p, "tol", "-1") == ZCC_ERR_INPUT);
  EXPECT(zcc_problem_set_option(p, "seed", "12x") == ZCC_ERR_INPUT);
  EXPECT(zcc_problem_set_option(p, "seed", "7") == ZCC_OK);

  EXPECT(zcc_summary(p, &out) == ZCC_OK);
  EXPECT(out && strstr(out, "infinitesimal center: yes, factor z\xc2\xb2") != NULL);
  zcc_string_free(out);

  EXPECT(zcc_analyze(p, &out) == ZCC_OK);
  EXPECT(out && out[0] == '{' && strstr(out, "\"Center\"") != NULL);
  zcc_string_free(out);

  EXPECT(zcc_grid(p, "0:0.2:0.1", 2.0, NULL, 4, &out, &warn) == ZCC_OK);
  EXPECT(out && strncmp(out, "re_t,im_t,re_eps,im_eps", 23) == 0);
  EXPECT(warn && warn[0] == '\0');
  zcc_string_free(out);
  zcc_string_free(warn);

  EXPECT(zcc_grid(p, "0:0.2", 2.0, NULL, 4, &out, NULL) == ZCC_ERR_INPUT);
  EXPECT(zcc_grid(p, "0:0.2:0.1", 0.0, "2:3+i", 3, &out, NULL) == ZCC_OK);
  zcc_string_free(out);

  EXPECT(zcc_problem_set_option(p, "max_degree", "3") == ZCC_OK);
  EXPECT(zcc_analyze(p, &out) == ZCC_ERR_CAP);
  zcc_problem_free(p);
  zcc_problem_free(NULL);

  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  puts("capi ok");
  return 0;
}
