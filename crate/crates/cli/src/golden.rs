//! Reference tables, embedded verbatim (values are `-E`, atomic units).

/// Cosine-Yukawa s-wave levels: `(δ, analytic, quadrature)`, space separated.
pub const TABLE1: &[(&str, &str, &str)] = &[
    (
        "0.01",
        "1.9900001243765 0.2122269805218 0.07003239211313 0.03093144647664 0.0149826725629 0.0071278983166 0.0029082843879 0.0006477201",
        "1.9900001243765 0.2122269805218 0.07003239211313 0.03093144647664 0.01498267256299 0.00712789831668 0.00290828438798 0.0006477201",
    ),
    ("0.08", "1.9200614950617 0.1442942629202 0.0118175986105", "1.9200614950617 0.1442942629202 0.0118175986105"),
    ("0.1", "1.9001189204077 0.1261021700846 0.00187488962075", "1.900118920407 0.126102170084 0.00187488962075"),
    ("0.2", "1.8009057424238 0.048234960913", "1.8009057424238 0.0482349609138"),
    ("0.5", "1.5123062833952", "1.51230628339522"),
    ("1", "1.08022847887960", "1.08022847887961"),
    ("2", "0.458673666401", "0.458673666401"),
    ("5", "0.0087175321", "0.008717532"),
    ("9", "8.6595E-6", "8.6593E-6"),
];

/// `(exact, analytic, quadrature)` for one angular momentum.
pub type KratzerCell = (&'static str, &'static str, &'static str);

/// Kratzer levels: `(B, n, [cell; ℓ = 1, 2, 5])`.
pub const TABLE2: &[(&str, usize, [KratzerCell; 3])] = &[
    (
        "50",
        0,
        [
            ("0.008562900642375", "0.0085629006423", "0.0085629006423"),
            ("0.008117084827976", "0.008117084827", "0.008117084827"),
            ("0.005958747303690", "0.0059587473036", "0.0059587473036"),
        ],
    ),
    (
        "50",
        1,
        [
            ("0.006695745370544", "0.0066957453705", "0.0066957453705"),
            ("0.006386070585535", "0.006386070585", "0.006386070585"),
            ("0.004843517472534", "0.0048435174725", "0.0048435174725"),
        ],
    ),
    (
        "50",
        2,
        [
            ("0.005378822847548", "0.0053788228475", "0.0053788228475"),
            ("0.005155045938050", "0.005155045938", "0.005155045938"),
            ("0.004014411087421", "0.0040144110874", "0.0040144110874"),
        ],
    ),
    (
        "50",
        3,
        [
            ("0.004415400957402", "0.0044154009574", "0.0044154009574"),
            ("0.004248475141182", "0.004248475141", "0.004248475141"),
            ("0.003381307818617", "0.0033813078186", "0.0033813078186"),
        ],
    ),
    (
        "50",
        4,
        [
            ("0.003689414577626", "0.0036894145776", "0.0036894145776"),
            ("0.003561603048495", "0.003561603048", "0.003561603048"),
            ("0.002886964601972", "0.0028869646019", "0.0028869646019"),
        ],
    ),
    (
        "5",
        0,
        [
            ("0.057474635269819", "0.0574746351", "0.0574746354"),
            ("0.040816326530612", "0.040816326530612", "0.040816326530612"),
            ("0.013994929411735", "0.0139949294117", "0.0139949294117"),
        ],
    ),
    (
        "5",
        1,
        [
            ("0.032054427436461", "0.0320544273", "0.0320544275"),
            ("0.024691358024691", "0.024691358024691", "0.024691358024691"),
            ("0.010270804820936", "0.0102708048209", "0.0102708048209"),
        ],
    ),
    (
        "5",
        2,
        [
            ("0.020410288672876", "0.0204102886", "0.0204102887"),
            ("0.016528925619834", "0.016528925619834", "0.016528925619834"),
            ("0.007857171966530", "0.0078571719665", "0.0078571719665"),
        ],
    ),
    (
        "5",
        3,
        [
            ("0.014125719046627", "0.0141257190", "0.0141257190"),
            ("0.011834319526627", "0.011834319526627", "0.011834319526627"),
            ("0.006204199126583", "0.0062041991265", "0.0062041991265"),
        ],
    ),
    (
        "5",
        4,
        [
            ("0.010352951221794", "0.0103529512", "0.0103529512"),
            ("0.008888888888888", "0.008888888888888", "0.008888888888888"),
            ("0.005022852463037", "0.0050228524630", "0.0050228524630"),
        ],
    ),
    (
        "1",
        0,
        [
            ("0.136454928592147", "0.136453616", "0.136461512"),
            ("0.066790737340724", "0.066790735906343", "0.0667907582895"),
            ("0.015949462144524", "0.0159494621445", "0.0159494621445"),
        ],
    ),
    (
        "1",
        1,
        [
            ("0.058874503045718", "0.058874079", "0.058876679"),
            ("0.035821227603347", "0.035821226852212", "0.0358212387831"),
            ("0.011481831764407", "0.0114818317644", "0.0114818317644"),
        ],
    ),
    (
        "1",
        2,
        [
            ("0.032634801055626", "0.032634619", "0.032635742"),
            ("0.022291236000336", "0.022291235591735", "0.0222912421493"),
            ("0.008658743703939", "0.0086587436962", "0.0086587436962"),
        ],
    ),
    (
        "1",
        3,
        [
            ("0.020704366750212", "0.020704273", "0.020704852"),
            ("0.015196424803818", "0.015196424562388", "0.0151964284637"),
            ("0.006761952806216", "0.0067619299812", "0.0067619299862"),
        ],
    ),
    (
        "1",
        4,
        [
            ("0.014294731377207", "0.014294677", "0.014295012"),
            ("0.011019378022041", "0.011019377868956", "0.0110193803550"),
            ("0.005426455616861", "0.0054216132940", "0.0054216140253"),
        ],
    ),
    (
        "0.1",
        0,
        [
            ("0.208436783273251", "0.208436756", "0.208437849"),
            ("0.078433271272334", "0.078433271262322", "0.07843327268673"),
            ("0.016469043621932", "0.0164690436219", "0.0164690436219"),
        ],
    ),
    (
        "0.1",
        1,
        [
            ("0.076965389599071", "0.076965383", "0.076965650"),
            ("0.040242948225715", "0.040242948220950", "0.04024294890538"),
            ("0.011798026267925", "0.0117980262679", "0.0117980262679"),
        ],
    ),
    (
        "0.1",
        2,
        [
            ("0.039701305667814", "0.039701302", "0.039701403"),
            ("0.024420944763840", "0.024420944761374", "0.02442094511732"),
            ("0.008865256070540", "0.0088652560668", "0.0088652560668"),
        ],
    ),
    (
        "0.1",
        3,
        [
            ("0.024164322881252", "0.024159070", "0.024159128"),
            ("0.016380596093781", "0.016380596092368", "0.01638059629706"),
            ("0.006904176778903", "0.0069041631880", "0.0069041631883"),
        ],
    ),
    (
        "0.1",
        4,
        [
            ("0.016239418588263", "0.015703849", "0.015703850"),
            ("0.011744364350880", "0.011744364350019", "0.01174436447747"),
            ("0.005528532691013", "0.0055250410995", "0.0055250411548"),
        ],
    ),
];

/// Angular momenta of the three column groups of [`TABLE2`].
pub const TABLE2_ELLS: [i32; 3] = [1, 2, 5];

/// One parameter row of the Morse table with its three β columns.
pub struct MorseRow {
    pub ell: i32,
    pub r0: &'static str,
    pub width: &'static str,
    pub depth: &'static str,
    /// `(β, analytic, quadrature)`.
    pub columns: [(&'static str, &'static str, &'static str); 3],
}

pub const TABLE3: &[MorseRow] = &[
    MorseRow {
        ell: 0,
        r0: "1",
        width: "2",
        depth: "-10",
        columns: [
            ("0.8", "241.4455469169 92.2621055918 21.147768355290", "241.4455469169 92.26210559186 21.14776835529"),
            ("1", "216.47559486094 73.0655914016 7.617263800989", "216.47559486093 73.06559140163 7.6172638009"),
            ("1.2", "191.571748471411 54.10423557665", "191.5717484714 54.1042355766"),
        ],
    },
    MorseRow {
        ell: 2,
        r0: "1",
        width: "2",
        depth: "-10",
        columns: [
            ("0.8", "73.8752316465212 11.7565360884", "73.87523164652 11.75653608845"),
            ("1", "55.151473935195", "55.151473935195"),
            ("1.2", "36.687751877201", "36.687751877201"),
        ],
    },
    MorseRow {
        ell: 0,
        r0: "4",
        width: "1.5",
        depth: "-6",
        columns: [
            (
                "0.8",
                "55.042767263132 33.964364044587 20.62526735064 11.160124151925 4.32512276547",
                "55.04276726313 33.964364044588 20.62526735064 11.160124151925 4.32512276547",
            ),
            (
                "1",
                "45.203869139509 25.21574484179 12.801414587566 4.23015943520",
                "45.2038691395 25.21574484179 12.80141458756 4.230159435",
            ),
            ("1.2", "35.38643997352 16.526155682649 5.087723194206", "35.386439973520 16.52615568264 5.08772319420"),
        ],
    },
    MorseRow {
        ell: 1,
        r0: "4",
        width: "1.5",
        depth: "-6",
        columns: [
            (
                "0.8",
                "41.8433860514363 26.11877926631 15.1603025679012 7.222263081408 1.53509424176",
                "41.843386051436 26.118779266314 15.160302567901 7.222263081408 1.535094241764",
            ),
            (
                "1",
                "32.629596329074 17.865063073765 7.80093221213 0.7682013249054",
                "32.629596329074 17.86506307376 7.80093221213 0.768201324905",
            ),
            ("1.2", "23.456123825950 9.69454254105 0.58960423692", "23.456123825950 9.694542541058 0.589604236925"),
        ],
    },
    MorseRow {
        ell: 2,
        r0: "4",
        width: "1.5",
        depth: "-6",
        columns: [
            (
                "0.8",
                "31.80730946194 19.317248416896 10.269437452762 3.691373989975",
                "31.807309461944 19.317248416896 10.26943745276 3.691373989975",
            ),
            ("1", "23.136414765140 11.549044910706 3.389515557097", "23.136414765140 11.5490449107062 3.389515557097"),
            ("1.2", "14.526564734920 3.894631587677", "14.52656473492 3.8946315876787"),
        ],
    },
];

/// Parses a space-separated list of table values.
pub fn values(cell: &str) -> Vec<f64> {
    cell.split_whitespace().map(|v| v.parse().expect("golden values are valid numbers")).collect()
}

/// Parses a single table value.
pub fn value(cell: &str) -> f64 {
    cell.parse().expect("golden values are valid numbers")
}
