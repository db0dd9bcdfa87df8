"""The library's running example, worked in base 10 with plain integers.

The same product is computed four ways: one wide evaluation, reciprocal
evaluations, negated evaluations, and all four points at a quarter of the
width.  Every intermediate value is checked, which pins down the algebra
the binary implementation follows (there the digit width is a power of
two and the digit work is bit blitting).
"""

F = [274, 610, 887, 621]
G = [553, 298, 424, 790]
H = [151522, 418982, 788467, 1082839, 1043046, 964034, 490590]


def ev(coeffs, x):
    num = sum(c * x**i for i, c in enumerate(coeffs))
    return num


def test_single_point_base_ten():
    f_val = ev(F, 10**7)
    g_val = ev(G, 10**7)
    assert f_val == 621000088700006100000274
    assert g_val == 790000042400002980000553
    product = f_val * g_val
    assert product == 490590096403410430461082839078846704189820151522
    digits = [(product // 10**(7 * i)) % 10**7 for i in range(7)]
    assert digits == H


def test_reciprocal_points_base_ten():
    n = 4
    f_fwd, f_rev = ev(F, 10**n), ev(F[::-1], 10**n)
    g_fwd, g_rev = ev(G, 10**n), ev(G[::-1], 10**n)
    assert f_fwd == 621_0887_0610_0274
    assert f_rev == 274_0610_0887_0621
    assert g_fwd == 790_0424_0298_0553
    assert g_rev == 553_0298_0424_0790
    prod_fwd = f_fwd * g_fwd
    prod_rev = f_rev * g_rev
    assert prod_fwd == 49_0686_4138_3154_2917_8508_8997_1522
    assert prod_rev == 15_1563_9060_8575_2943_3142_4083_0590

    # first reconstruction step: low half from the forward product, carry
    # decided by one comparison, high half from the reversed product
    lo0 = prod_fwd % 10**n
    w1 = (prod_rev // 10**(6 * n)) % 10**n
    assert lo0 == 1522 and w1 == 1563
    assert lo0 <= w1  # no carry into the top stream
    hi0 = prod_rev // 10**(7 * n)
    assert hi0 == 15
    assert lo0 + 10**n * hi0 == H[0] == 151522

    # subtracting the recovered coefficient exposes both halves of the next
    assert prod_fwd - H[0] == 49_0686_4138_3154_2917_8508_8982_0000
    assert prod_rev - H[0] * 10**(6 * n) == 41_9060_8575_2943_3142_4083_0590
    lo1 = (prod_fwd - H[0]) // 10**n % 10**n
    hi1 = (prod_rev - H[0] * 10**(6 * n)) // 10**(6 * n)
    assert lo1 + 10**n * hi1 == H[1] == 418982


def test_negated_points_base_ten():
    n = 4
    f_even = 274 + 887 * 10**(2 * n)
    f_odd = 610 + 621 * 10**(2 * n)
    assert ev(F, 10**n) == f_even + f_odd * 10**n == 621088706100274
    assert ev(F, -10**n) == f_even - f_odd * 10**n == -620911306099726
    assert ev(G, 10**n) == 790042402980553
    assert ev(G, -10**n) == -789957602979447

    prod_pos = ev(F, 10**n) * ev(G, 10**n)
    prod_neg = ev(F, -10**n) * ev(G, -10**n)
    assert prod_pos == 490686413831542917850889971522
    assert prod_neg == 490493607029377239842510331522

    even_part = (prod_pos + prod_neg) // 2
    odd_part = (prod_pos - prod_neg) // 2
    assert (prod_pos + prod_neg) % 2 == 0 and (prod_pos - prod_neg) % 2 == 0
    assert even_part == 490590_01043046_00788467_00151522
    assert odd_part == 964034_01082839_00418982_0000

    width = 10**(2 * n)
    assert [(even_part // width**i) % width for i in range(4)] == H[0::2]
    assert odd_part % 10**n == 0
    shifted = odd_part // 10**n
    assert [(shifted // width**i) % width for i in range(3)] == H[1::2]


def test_four_points_base_ten():
    n = 2
    f_at = {
        10**n: ev(F, 10**n),
        -10**n: ev(F, -10**n),
    }
    assert f_at[10**n] == 887_0274 + 621_0610_00 == 629931274
    assert f_at[-10**n] == 887_0274 - 621_0610_00 == -612190726
    f_rev = ev(F[::-1], 10**n)
    f_nrev = sum(c * (-1) ** i * 10**(n * (3 - i)) for i, c in enumerate(F))
    assert f_rev == 274_0887_00 + 610_0621 == 280189321
    assert f_nrev == 274_0887_00 - 610_0621 == 267988079

    g_pos, g_neg = ev(G, 10**n), ev(G, -10**n)
    g_rev = ev(G[::-1], 10**n)
    g_nrev = sum(c * (-1) ** i * 10**(n * (3 - i)) for i, c in enumerate(G))
    assert g_pos == 794270353 and g_neg == -785789247
    assert g_rev == 556023190 and g_nrev == 550061610

    prod_pos = f_at[10**n] * g_pos
    prod_neg = f_at[-10**n] * g_neg
    prod_rev = f_rev * g_rev
    prod_nrev = f_nrev * g_nrev
    assert prod_pos == 500335735365719722
    assert prod_neg == 481052889603923322
    assert prod_rev == 155791760066353990
    assert prod_nrev == 147409954195547190

    fwd_even = (prod_pos + prod_neg) // 2
    fwd_odd = (prod_pos - prod_neg) // 2
    rev_even = (prod_rev + prod_nrev) // 2
    rev_odd = (prod_rev - prod_nrev) // 2
    assert fwd_even == 49_0694_3124_8482_1522
    assert rev_even == 15_1600_8571_3095_0590
    assert fwd_odd == 96_4142_2880_8982_00
    assert rev_odd == 41_9090_2935_4034_00

    # the even parts are the two overlapped packings of H[0::2] at width
    # 10**(2n), and the odd parts (after dropping the stray 10**n factor)
    # those of H[1::2]
    width = 10**(2 * n)
    even = H[0::2]
    assert fwd_even == sum(h * width**i for i, h in enumerate(even))
    assert rev_even == sum(h * width**(3 - i) for i, h in enumerate(even))
    odd = H[1::2]
    assert fwd_odd // 10**n == sum(h * width**i for i, h in enumerate(odd))
    assert rev_odd // 10**n == sum(h * width**(2 - i)
                                   for i, h in enumerate(odd))
