#ifndef LEONARD_LEONARD_HPP
#define LEONARD_LEONARD_HPP

#include "leonard/affine.hpp"
#include "leonard/classify.hpp"
#include "leonard/d4.hpp"
#include "leonard/document.hpp"
#include "leonard/error.hpp"
#include "leonard/field.hpp"
#include "leonard/parray.hpp"
#include "leonard/realize.hpp"
#include "leonard/typefit.hpp"

#endif  // LEONARD_LEONARD_HPP
