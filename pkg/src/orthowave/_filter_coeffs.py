"""Scaling-filter tap tables for the built-in catalog.

Values were computed offline by spectral factorization of the Daubechies
product polynomial (db, sym, cd6) and a constrained root solve (coif),
then frozen here.  `filters` re-verifies orthonormality at import, so a
corrupted entry fails fast.
"""

# name -> taps h_0..h_{M-1}, normalized to sum(h) = sqrt(2), sum(|h|^2) = 1
TAPS = {
    "haar": (
        0.7071067811865476,
        0.7071067811865476,
    ),
    "db2": (
        0.48296291314453416,
        0.8365163037378079,
        0.2241438680420134,
        -0.12940952255126037,
    ),
    "db3": (
        0.33267055295008263,
        0.8068915093110925,
        0.45987750211849154,
        -0.13501102001025458,
        -0.08544127388202666,
        0.03522629188570953,
    ),
    "db4": (
        0.2303778133088965,
        0.7148465705529157,
        0.6308807679298589,
        -0.027983769416859854,
        -0.18703481171909309,
        0.030841381835560764,
        0.0328830116668852,
        -0.010597401785069032,
    ),
    "db5": (
        0.16010239797419293,
        0.6038292697971896,
        0.7243085284377729,
        0.13842814590132074,
        -0.24229488706638203,
        -0.032244869584638375,
        0.07757149384004572,
        -0.006241490212798274,
        -0.012580751999081999,
        0.0033357252854737712,
    ),
    "db6": (
        0.11154074335010947,
        0.49462389039845306,
        0.7511339080210954,
        0.31525035170919763,
        -0.22626469396543983,
        -0.12976686756726194,
        0.09750160558732304,
        0.027522865530305727,
        -0.03158203931748603,
        0.0005538422011614961,
        0.004777257510945511,
        -0.0010773010853084796,
    ),
    "db7": (
        0.07785205408500918,
        0.3965393194819173,
        0.7291320908462351,
        0.4697822874051931,
        -0.14390600392856498,
        -0.22403618499387498,
        0.07130921926683026,
        0.08061260915108308,
        -0.03802993693501441,
        -0.01657454163066688,
        0.01255099855609984,
        0.0004295779729213665,
        -0.0018016407040474908,
        0.00035371379997452024,
    ),
    "db8": (
        0.05441584224310401,
        0.31287159091429995,
        0.6756307362972898,
        0.5853546836542067,
        -0.015829105256349306,
        -0.2840155429615469,
        0.0004724845739132828,
        0.12874742662047847,
        -0.017369301001807547,
        -0.044088253930794755,
        0.013981027917398282,
        0.008746094047405777,
        -0.004870352993451574,
        -0.00039174037337694705,
        0.0006754494064505693,
        -0.00011747678412476953,
    ),
    "db9": (
        0.038077947363878345,
        0.24383467461259034,
        0.6048231236901112,
        0.6572880780513005,
        0.13319738582500756,
        -0.2932737832791749,
        -0.09684078322297646,
        0.14854074933810638,
        0.03072568147933338,
        -0.06763282906132997,
        0.00025094711483145197,
        0.022361662123679096,
        -0.004723204757751397,
        -0.00428150368246343,
        0.0018476468830562265,
        0.00023038576352319597,
        -0.0002519631889427101,
        3.93473203162716e-05,
    ),
    "db10": (
        0.026670057900555554,
        0.1881768000776915,
        0.5272011889317256,
        0.6884590394536035,
        0.2811723436605775,
        -0.24984642432731538,
        -0.19594627437737705,
        0.12736934033579325,
        0.09305736460357235,
        -0.07139414716639708,
        -0.029457536821875813,
        0.033212674059341,
        0.0036065535669561697,
        -0.010733175483330575,
        0.001395351747052901,
        0.001992405295185056,
        -0.0006858566949597116,
        -0.00011646685512928545,
        9.358867032006959e-05,
        -1.3264202894521244e-05,
    ),
    "sym4": (
        0.032223100604051466,
        -0.012603967262031304,
        -0.09921954357663353,
        0.29785779560530606,
        0.8037387518051321,
        0.497618667632775,
        -0.029635527646002493,
        -0.07576571478950221,
    ),
    "sym5": (
        0.019538882735249827,
        -0.021101834024689042,
        -0.17532808990805623,
        0.01660210576451085,
        0.633978963456792,
        0.7234076904040407,
        0.19939753397685558,
        -0.039134249302313844,
        0.02951949092570626,
        0.027333068344998768,
    ),
    "sym6": (
        -0.00780070832503238,
        0.0017677118642540077,
        0.04472490177078139,
        -0.02106029251237085,
        -0.07263752278637658,
        0.3379294217281658,
        0.787641141028651,
        0.49105594192797375,
        -0.04831174258569806,
        -0.11799011114852002,
        0.0034907120842221626,
        0.015404109327044824,
    ),
    "sym7": (
        0.0022918339540537714,
        -0.003283297847466811,
        -0.01812660513133846,
        0.020464207577546033,
        0.04474234946835238,
        -0.1010109208684203,
        -0.05680447688966697,
        0.4836109156822677,
        0.7819215932917282,
        0.3602184609062602,
        -0.06413128980738582,
        -0.06490800354718848,
        0.017213376300804502,
        0.012015419283549189,
    ),
    "sym8": (
        0.001889950332767689,
        -0.0003029205147241331,
        -0.014952258337062199,
        0.0038087520138944896,
        0.04913717967373029,
        -0.027219029917103486,
        -0.0519458381078818,
        0.36444189483617895,
        0.777185751699628,
        0.4813596512590534,
        -0.061273359067811076,
        -0.14329423835127267,
        0.007607487324976609,
        0.03169508781152599,
        -0.0005421323318000107,
        -0.0033824159510050028,
    ),
    "coif1": (
        -0.015655728135791993,
        -0.07273261951252645,
        0.3848648468648577,
        0.8525720202116004,
        0.33789766245748176,
        -0.07273261951252645,
    ),
    "coif2": (
        -0.000720549445520347,
        -0.001823208870911032,
        0.005611434819368834,
        0.02368017194684777,
        -0.059434418646431085,
        -0.07648859907828075,
        0.41700518442323903,
        0.8127236354494135,
        0.38611006682276283,
        -0.0673725547237256,
        -0.04146493678687178,
        0.01638733646320364,
    ),
    "coif3": (
        -3.459977319727277e-05,
        -7.0983302506379e-05,
        0.00046621695982040283,
        0.00111751877083063,
        -0.002574517688136797,
        -0.009007976136730622,
        0.01588054486366945,
        0.03455502757329773,
        -0.08230192710629981,
        -0.07179982161915484,
        0.42848347637737,
        0.7937772226260872,
        0.4051769024091182,
        -0.061123390002972545,
        -0.06577191128146936,
        0.023452696142077168,
        0.007782596425672746,
        -0.003793512864380802,
    ),
    "cd6": (
        complex(-0.06629126073623883, -0.085581649610182205),
        complex(0.11048543456039805, -0.085581649610182205),
        complex(0.6629126073623883, 0.17116329922036441),
        complex(0.6629126073623883, 0.17116329922036441),
        complex(0.11048543456039805, -0.085581649610182205),
        complex(-0.06629126073623883, -0.085581649610182205),
    ),
}

# vanishing moments per filter, used as the default index shift
VANISHING_MOMENTS = {
    "haar": 1,
    **{f"db{k}": k for k in range(2, 11)},
    **{f"sym{k}": k for k in range(4, 9)},
    **{f"coif{k}": 2 * k for k in (1, 2, 3)},
    "cd6": 3,
}

FAMILY = {
    "haar": "haar",
    **{f"db{k}": "daubechies" for k in range(2, 11)},
    **{f"sym{k}": "symmlet" for k in range(4, 9)},
    **{f"coif{k}": "coiflet" for k in (1, 2, 3)},
    "cd6": "complex_daubechies",
}
