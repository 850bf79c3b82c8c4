#pragma once

#include "hahnfit/errors.hpp"
#include "hahnfit/summation.hpp"
#include "hahnfit/numeric_kernel.hpp"
#include "hahnfit/jacobi.hpp"
#include "hahnfit/hahn.hpp"
#include "hahnfit/quadrature.hpp"
#include "hahnfit/expansion.hpp"
#include "hahnfit/ls_oracle.hpp"
#include "hahnfit/variation.hpp"
#include "hahnfit/registry.hpp"
#include "hahnfit/experiments.hpp"
#include "hahnfit/verify.hpp"
