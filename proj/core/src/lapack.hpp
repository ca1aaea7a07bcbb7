#ifndef SUSYDIRAC_SRC_LAPACK_HPP
#define SUSYDIRAC_SRC_LAPACK_HPP

// Minimal Fortran LAPACK bindings used by the solvers. Band storage follows
// the LAPACK conventions (column-major, upper triangle for symmetric types).

#include <complex>

extern "C" {

double dlamch_(const char* cmach);

void dsbtrd_(const char* vect, const char* uplo, const int* n, const int* kd, double* ab,
             const int* ldab, double* d, double* e, double* q, const int* ldq, double* work,
             int* info);

void dstebz_(const char* range, const char* order, const int* n, const double* vl,
             const double* vu, const int* il, const int* iu, const double* abstol,
             const double* d, const double* e, int* m, int* nsplit, double* w, int* iblock,
             int* isplit, double* work, int* iwork, int* info);

void dgbtrf_(const int* m, const int* n, const int* kl, const int* ku, double* ab,
             const int* ldab, int* ipiv, int* info);

void dgbtrs_(const char* trans, const int* n, const int* kl, const int* ku, const int* nrhs,
             const double* ab, const int* ldab, const int* ipiv, double* b, const int* ldb,
             int* info);

void zgbtrf_(const int* m, const int* n, const int* kl, const int* ku, std::complex<double>* ab,
             const int* ldab, int* ipiv, int* info);

void zgbtrs_(const char* trans, const int* n, const int* kl, const int* ku, const int* nrhs,
             const std::complex<double>* ab, const int* ldab, const int* ipiv,
             std::complex<double>* b, const int* ldb, int* info);
}

#endif
